// JSON encodings of the report types. Keys are emitted sorted (nlohmann's
// default std::map object), doubles in shortest round-trip form, so equal
// inputs give byte-identical documents.
#pragma once

#include <json.hpp>

#include "ioopt/consumption.hpp"
#include "ioopt/ranking.hpp"
#include "ioopt/structure_opt.hpp"

namespace ioopt {

using Json = nlohmann::json;

Json matrix_json(const Matrix<double>& m);
Json to_json(const EigenTriple& t, const std::vector<std::string>& labels);
Json to_json(const TransitionChain& c, const std::vector<std::string>& labels);
Json to_json(const DualChain& c);
Json to_json(const StabilityReport& r, const std::vector<std::string>& labels);
Json to_json(const ConsumptionPlan& p);
Json to_json(const FeasibleAlpha& f);
Json to_json(const RankingReport& r);
Json to_json(const ClassificationReport& c, const std::vector<std::string>& labels);
Json to_json(const OptimizationResult& r);
Json to_json(const InvarianceCheck& c);
Json to_json(const SharedStability& s, const std::vector<std::string>& labels);

/// Serialised with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace ioopt
