#include "ioopt/report.hpp"

namespace ioopt {

namespace {

Json labelled(const std::vector<double>& values, const std::vector<std::string>& labels) {
  Json out = Json::object();
  for (std::size_t k = 0; k < values.size(); ++k) out[labels[k]] = values[k];
  return out;
}

Json product_set(const std::vector<std::size_t>& idx, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (auto k : idx) out.push_back(labels[k]);
  return out;
}

}  // namespace

Json matrix_json(const Matrix<double>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

Json to_json(const EigenTriple& t, const std::vector<std::string>& labels) {
  return {{"labels", labels},
          {"rho", t.rho},
          {"u", t.u},
          {"v", t.v},
          {"mu", hadamard<double>(t.u, t.v)},
          {"residual", t.residual},
          {"normalization", "sum(v) = d, u.v = 1"}};
}

Json to_json(const TransitionChain& c, const std::vector<std::string>& labels) {
  return {{"labels", labels},
          {"P", matrix_json(c.p)},
          {"mu", c.mu},
          {"pi", c.pi},
          {"source_rho", c.source_rho},
          {"max_row_sum_deviation", stochastic_deviation(c.p)}};
}

Json to_json(const DualChain& c) {
  return {{"Q", matrix_json(c.q)},
          {"equilibrium", c.equilibrium},
          {"max_column_sum_deviation", stochastic_deviation(c.q, true)}};
}

Json to_json(const StabilityReport& r, const std::vector<std::string>& labels) {
  Json j;
  j["collapse_time"] = r.collapse_time ? Json(*r.collapse_time) : Json(nullptr);
  j["collapse_product"] = r.collapse_product ? Json(labels[*r.collapse_product]) : Json(nullptr);
  j["collapse_product_index"] = r.collapse_product ? Json(*r.collapse_product + 1) : Json(nullptr);
  j["crisis_window"] =
      r.crisis_window ? Json::array({r.crisis_window->first, r.crisis_window->second}) : Json(nullptr);
  j["terminal_max"] = r.terminal_magnitudes.first;
  j["terminal_min"] = r.terminal_magnitudes.second;
  j["steps_run"] = r.steps_run;
  return j;
}

Json to_json(const ConsumptionPlan& p) {
  return {{"alpha", p.alpha}, {"gamma", p.gamma}, {"delta", p.delta}, {"rho_A", p.rho_a}, {"rho_alpha", p.rho_alpha}};
}

Json to_json(const FeasibleAlpha& f) {
  if (!f.feasible) return {{"feasible", false}};
  return {{"feasible", true}, {"alpha_bar", f.alpha}, {"delta", f.delta}, {"bisection_steps", f.bisection_steps}};
}

Json to_json(const RankingReport& r) {
  Json order = Json::array();
  for (auto k : r.order) order.push_back(r.labels[k]);
  return {{"order", order},
          {"values", labelled(r.values, r.labels)},
          {"equilibrium_multiples", labelled(r.equilibrium_multiples, r.labels)},
          {"reference", "mean of mu"}};
}

Json to_json(const ClassificationReport& c, const std::vector<std::string>& labels) {
  return {{"ascending_order", product_set(c.ascending_order, labels)},
          {"cumulative", c.cumulative},
          {"weak", product_set(c.weak, labels)},
          {"intermediate", product_set(c.intermediate, labels)},
          {"pillar", product_set(c.pillar, labels)},
          {"theta_weak", c.theta_weak},
          {"theta_pillar", c.theta_pillar}};
}

Json to_json(const OptimizationResult& r) {
  const auto& labels = r.a_tilde.labels();
  return {{"labels", labels},
          {"A_tilde", matrix_json(r.a_tilde.values())},
          {"u_tilde", r.u_tilde},
          {"v_tilde", r.v_tilde},
          {"w", r.w},
          {"rho", r.rho}};
}

Json to_json(const InvarianceCheck& c) {
  return {{"holds", c.holds},
          {"max_chain_difference", c.max_chain_difference},
          {"max_dual_difference", c.max_dual_difference}};
}

Json to_json(const SharedStability& s, const std::vector<std::string>& labels) {
  return {{"agree", s.agree},
          {"A", to_json(s.a_space, labels)},
          {"A_tilde", to_json(s.a_tilde_space, labels)},
          {"P", to_json(s.p_space, labels)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ioopt
