#include "ioopt/ioopt.h"

#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <filesystem>
#include <memory>

#include "ioopt/pipeline.hpp"
#include "ioopt/table_io.hpp"

struct ioopt_matrix {
  ioopt::StructureMatrix value;
};

struct ioopt_options {
  ioopt::RunConfig config;
};

struct ioopt_result {
  std::string command;
  std::string json;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

namespace {

thread_local std::string last_error;

ioopt_status status_of(ioopt::ErrorKind kind) {
  switch (kind) {
    case ioopt::ErrorKind::parse: return IOOPT_ERR_PARSE;
    case ioopt::ErrorKind::structural:
    case ioopt::ErrorKind::model: return IOOPT_ERR_MODEL;
    case ioopt::ErrorKind::domain: return IOOPT_ERR_DOMAIN;
    case ioopt::ErrorKind::convergence: return IOOPT_ERR_CONVERGENCE;
    case ioopt::ErrorKind::numeric: return IOOPT_ERR_NUMERIC;
    case ioopt::ErrorKind::io: return IOOPT_ERR_IO;
  }
  return IOOPT_ERR_INTERNAL;
}

ioopt_status fail(ioopt_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class F>
ioopt_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const ioopt::Error& e) {
    return fail(status_of(e.kind()), std::string(to_string(e.kind())) + " error: " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(IOOPT_ERR_INTERNAL, "internal error: out of memory");
  } catch (const std::exception& e) {
    return fail(IOOPT_ERR_INTERNAL, std::string("internal error: ") + e.what());
  } catch (...) {
    return fail(IOOPT_ERR_INTERNAL, "internal error: unknown exception");
  }
}

}  // namespace

extern "C" {

const char* ioopt_version(void) { return "1.0.0"; }

const char* ioopt_last_error(void) { return last_error.c_str(); }

const char* ioopt_status_name(ioopt_status status) {
  switch (status) {
    case IOOPT_OK: return "ok";
    case IOOPT_ERR_USAGE: return "usage";
    case IOOPT_ERR_PARSE: return "parse";
    case IOOPT_ERR_MODEL: return "model";
    case IOOPT_ERR_CONVERGENCE: return "convergence";
    case IOOPT_ERR_DOMAIN: return "domain";
    case IOOPT_ERR_NUMERIC: return "numeric";
    case IOOPT_ERR_IO: return "io";
    case IOOPT_ERR_INTERNAL: return "internal";
    case IOOPT_ERR_INVARIANT: return "invariant";
  }
  return "unknown";
}

void ioopt_string_free(char* s) { std::free(s); }

ioopt_status ioopt_matrix_load_csv(const char* path, ioopt_matrix** out) {
  if (!path || !out) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    *out = new ioopt_matrix{ioopt::parse_table(path)};
    return IOOPT_OK;
  });
}

ioopt_status ioopt_matrix_from_csv_text(const char* text, ioopt_matrix** out) {
  if (!text || !out) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    *out = new ioopt_matrix{ioopt::parse_table_text(text)};
    return IOOPT_OK;
  });
}

ioopt_status ioopt_matrix_create(size_t d, const double* values, const char* const* labels, ioopt_matrix** out) {
  if (!values || !out || d == 0) return fail(IOOPT_ERR_USAGE, "usage error: null argument or zero dimension");
  return guarded([&] {
    ioopt::Matrix<double> m(d, d);
    for (size_t i = 0; i < d; ++i) std::copy(values + i * d, values + (i + 1) * d, m.row(i).begin());
    std::vector<std::string> names;
    if (labels)
      for (size_t i = 0; i < d; ++i) names.emplace_back(labels[i] ? labels[i] : "");
    *out = new ioopt_matrix{ioopt::StructureMatrix::from_values(m, std::move(names))};
    return IOOPT_OK;
  });
}

void ioopt_matrix_free(ioopt_matrix* m) { delete m; }

size_t ioopt_matrix_dim(const ioopt_matrix* m) { return m ? m->value.dim() : 0; }

ioopt_status ioopt_matrix_to_csv(const ioopt_matrix* m, char** out) {
  if (!m || !out) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    auto text = ioopt::serialize_table(m->value);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return IOOPT_OK;
  });
}

ioopt_status ioopt_options_create(ioopt_options** out) {
  if (!out) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    *out = new ioopt_options{};
    return IOOPT_OK;
  });
}

void ioopt_options_free(ioopt_options* o) { delete o; }

ioopt_status ioopt_options_set(ioopt_options* o, const char* key, const char* value) {
  if (!o || !key || !value) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    try {
      o->config.set(key, value);
    } catch (const ioopt::ParseError& e) {
      return fail(IOOPT_ERR_USAGE, std::string("usage error: ") + e.what());
    }
    return IOOPT_OK;
  });
}

ioopt_status ioopt_options_load_file(ioopt_options* o, const char* path) {
  if (!o || !path) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    o->config.load_file(path);
    return IOOPT_OK;
  });
}

const char* ioopt_options_output_dir(const ioopt_options* o) {
  if (!o || o->config.output_dir.empty()) return nullptr;
  return o->config.output_dir.c_str();
}

ioopt_status ioopt_run(const char* command, const ioopt_matrix* m, const ioopt_options* o, ioopt_result** out) {
  if (!command || !m || !out) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  *out = nullptr;
  return guarded([&] {
    const auto& names = ioopt::command_names();
    if (std::find(names.begin(), names.end(), command) == names.end())
      return fail(IOOPT_ERR_USAGE, std::string("usage error: unknown command '") + command + "'");
    static const ioopt_options defaults{};
    auto r = ioopt::run_command(command, m->value, (o ? o : &defaults)->config);
    *out = new ioopt_result{command, ioopt::dump(r.report), std::move(r.artifacts)};
    if (!r.ok) return fail(IOOPT_ERR_INVARIANT, std::string("invariant error: ") + command + " found a failing property");
    return IOOPT_OK;
  });
}

void ioopt_result_free(ioopt_result* r) { delete r; }

const char* ioopt_result_json(const ioopt_result* r) { return r ? r->json.c_str() : nullptr; }

size_t ioopt_result_artifact_count(const ioopt_result* r) { return r ? r->artifacts.size() : 0; }

const char* ioopt_result_artifact_name(const ioopt_result* r, size_t i) {
  return r && i < r->artifacts.size() ? r->artifacts[i].first.c_str() : nullptr;
}

const char* ioopt_result_artifact_data(const ioopt_result* r, size_t i) {
  return r && i < r->artifacts.size() ? r->artifacts[i].second.c_str() : nullptr;
}

ioopt_status ioopt_result_write(const ioopt_result* r, const char* dir) {
  if (!r || !dir) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    std::filesystem::path base(dir);
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) throw ioopt::IoError("cannot create output directory '" + base.string() + "': " + ec.message());
    ioopt::write_file_atomic(base / (r->command + ".json"), r->json);
    for (const auto& [name, data] : r->artifacts) ioopt::write_file_atomic(base / name, data);
    return IOOPT_OK;
  });
}

ioopt_status ioopt_eigentriple(const ioopt_matrix* m, const ioopt_options* o, double* rho, double* u, double* v) {
  if (!m || !rho || !u || !v) return fail(IOOPT_ERR_USAGE, "usage error: null argument");
  return guarded([&] {
    ioopt::SolverConfig cfg = o ? o->config.solver : ioopt::SolverConfig{};
    auto t = ioopt::eigentriple(m->value, cfg);
    *rho = t.rho;
    std::copy(t.u.begin(), t.u.end(), u);
    std::copy(t.v.begin(), t.v.end(), v);
    return IOOPT_OK;
  });
}

}  // extern "C"
