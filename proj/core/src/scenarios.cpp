#include "fdtsim/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace fdtsim::scenarios {
namespace {

using graphs::CausalModel;
using graphs::Cpt;
using graphs::DecisionProblem;
using graphs::Theory;
using graphs::Variable;

constexpr std::array kAllScenarios = {ScenarioId::kSmokingEdt, ScenarioId::kSmokingCdt,
                                      ScenarioId::kNewcomb, ScenarioId::kParfit,
                                      ScenarioId::kTwinPd};

// Resolved parameter values: defaults overlaid with overrides.
class Params {
 public:
  explicit Params(const ScenarioParams& params) {
    const auto known = parameters(params.id);
    for (const auto& [key, value] : params.overrides) {
      const auto it = std::find_if(known.begin(), known.end(),
                                   [&](const ParameterInfo& p) { return p.name == key; });
      if (it == known.end()) {
        throw ScenarioError(fmt::format("scenario '{}' has no parameter '{}'",
                                        to_string(params.id), key));
      }
      if (!std::isfinite(value)) {
        throw ScenarioError(fmt::format("parameter '{}' must be finite", key));
      }
      if (it->is_probability && (value < 0.0 || value > 1.0)) {
        throw ScenarioError(fmt::format("parameter '{}' = {} is not a probability", key, value));
      }
    }
    for (const auto& p : known) {
      const auto it = params.overrides.find(p.name);
      if (it != params.overrides.end()) {
        values_[p.name] = it->second;
      } else if (p.default_value) {
        values_[p.name] = *p.default_value;
      }
    }
  }

  double operator[](std::string_view key) const { return values_.at(std::string(key)); }
  std::optional<double> get(std::string_view key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, double, std::less<>> values_;
};

std::vector<double> bernoulli_row(double p_first) { return {p_first, 1.0 - p_first}; }

// Prior P(first label) of the decision-function variable such that the
// child predictor reports `target_second` with P(second label) = target given
// it copies the disposition with probability `accuracy`.
//   P(pred = second) = q * accuracy + (1 - q) * (1 - accuracy),
// where q = P(disposition = second).
double disposition_prior_second(double accuracy, double target_second,
                                std::string_view scenario) {
  const double slope = 2.0 * accuracy - 1.0;
  if (std::abs(slope) < 1e-12) {
    if (std::abs(target_second - 0.5) > 1e-12) {
      throw ScenarioError(fmt::format(
          "{}: with accuracy 0.5 every prediction probability is 0.5, not {}", scenario,
          target_second));
    }
    return 0.5;
  }
  double q = (target_second - (1.0 - accuracy)) / slope;
  if (q < -1e-12 || q > 1.0 + 1e-12) {
    throw ScenarioError(fmt::format(
        "{}: prediction {} is unreachable with accuracy {} (must lie between {} and {})",
        scenario, target_second, accuracy, std::min(accuracy, 1.0 - accuracy),
        std::max(accuracy, 1.0 - accuracy)));
  }
  return std::clamp(q, 0.0, 1.0);
}

// Rows for `child` with parents (gene-like binary, decision function) whose
// value depends only on the first parent.
std::vector<std::vector<double>> ignore_second_parent(const std::vector<double>& if_first,
                                                      const std::vector<double>& if_second,
                                                      std::size_t second_card) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < second_card; ++i) rows.push_back(if_first);
  for (std::size_t i = 0; i < second_card; ++i) rows.push_back(if_second);
  return rows;
}

std::vector<std::vector<double>> identity_rows(std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return rows;
}

DecisionProblem smoking_edt(const Params& p) {
  // Correlational reading: the population statistics are P(gene | smoke).
  CausalModel m;
  m.variables = {{"Smoke", {"smoke", "not-smoke"}},
                 {"Gene", {"gene", "no-gene"}},
                 {"Cancer", {"cancer", "no-cancer"}}};
  m.cpts = {
      Cpt{"Smoke", {}, {bernoulli_row(p["smoke_prior"])}},
      Cpt{"Gene", {"Smoke"}, {bernoulli_row(p["gene_if_smoke"]), bernoulli_row(p["gene_if_no_smoke"])}},
      Cpt{"Cancer", {"Gene"}, {bernoulli_row(p["cancer_if_gene"]), bernoulli_row(p["cancer_if_no_gene"])}},
  };
  const double s = p["smoke_utility"];
  const double c = p["cancer_utility"];
  m.utility = {{"Smoke", "Cancer"}, {s + c, s, c, 0.0}};
  return DecisionProblem{std::move(m), "Smoke", std::nullopt, {}};
}

DecisionProblem smoking_cdt(const Params& p) {
  // Gene causes both smoking and cancer; the decision function feeds Smoke
  // but carries no information about Gene.
  CausalModel m;
  m.variables = {{std::string(kDecisionFn), {"smoke", "not-smoke"}},
                 {"Gene", {"gene", "no-gene"}},
                 {"Smoke", {"smoke", "not-smoke"}},
                 {"Cancer", {"cancer", "no-cancer"}}};
  m.cpts = {
      Cpt{std::string(kDecisionFn), {}, {bernoulli_row(0.5)}},
      Cpt{"Gene", {}, {bernoulli_row(p["gene_prior"])}},
      Cpt{"Smoke", {"Gene", std::string(kDecisionFn)},
          ignore_second_parent(bernoulli_row(p["smoke_if_gene"]),
                               bernoulli_row(p["smoke_if_no_gene"]), 2)},
      Cpt{"Cancer", {"Gene"}, {bernoulli_row(p["cancer_if_gene"]), bernoulli_row(p["cancer_if_no_gene"])}},
  };
  const double s = p["smoke_utility"];
  const double c = p["cancer_utility"];
  m.utility = {{"Smoke", "Cancer"}, {s + c, s, c, 0.0}};
  return DecisionProblem{std::move(m), "Smoke", std::string(kDecisionFn), {}};
}

DecisionProblem newcomb(const Params& p, std::optional<Theory> theory) {
  const double accuracy = p["accuracy"];
  const double prediction =
      p.get("prediction").value_or(theory == Theory::kCdt ? accuracy : 0.5);
  const double q_two_box = disposition_prior_second(accuracy, prediction, "newcomb");
  const double a = p["box_a"];
  const double b = p["box_b"];

  CausalModel m;
  m.variables = {{std::string(kDecisionFn), {"one-box", "two-box"}},
                 {"Action", {"one-box", "two-box"}},
                 {"Prediction", {"one-box", "two-box"}}};
  m.cpts = {
      Cpt{std::string(kDecisionFn), {}, {bernoulli_row(1.0 - q_two_box)}},
      Cpt{"Action", {std::string(kDecisionFn)}, identity_rows(2)},
      Cpt{"Prediction", {std::string(kDecisionFn)},
          {bernoulli_row(accuracy), bernoulli_row(1.0 - accuracy)}},
  };
  // Box B (opaque) is filled iff one-boxing was predicted.
  m.utility = {{"Action", "Prediction"}, {b, 0.0, a + b, a}};
  return DecisionProblem{std::move(m), "Action", std::string(kDecisionFn), {}};
}

DecisionProblem parfit(const Params& p, std::optional<Theory> theory) {
  const double accuracy = p["accuracy"];
  const double prediction =
      p.get("prediction").value_or(theory == Theory::kCdt ? 1.0 - accuracy : 0.5);
  // `prediction` is P(Driver = drive); drive is the first label, pay the first
  // disposition, so P(drive) = P(pay) * acc + (1 - P(pay)) * (1 - acc).
  const double q_pay = disposition_prior_second(accuracy, prediction, "parfit");
  const double stranded = p["stranded_utility"];
  const double payment = p["payment"];

  CausalModel m;
  m.variables = {{std::string(kDecisionFn), {"pay", "refuse"}},
                 {"Driver", {"drive", "leave"}},
                 {"Pay", {"pay", "refuse"}}};
  m.cpts = {
      Cpt{std::string(kDecisionFn), {}, {bernoulli_row(q_pay)}},
      Cpt{"Driver", {std::string(kDecisionFn)},
          {bernoulli_row(accuracy), bernoulli_row(1.0 - accuracy)}},
      // The agent sees the driver's decision but follows its disposition.
      Cpt{"Pay", {std::string(kDecisionFn), "Driver"},
          {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}}},
  };
  m.utility = {{"Driver", "Pay"}, {-payment, 0.0, stranded, stranded}};
  return DecisionProblem{std::move(m), "Pay", std::string(kDecisionFn), {}};
}

DecisionProblem twin_pd(const Params& p) {
  const double cc = p["cc"], cd = p["cd"], dc = p["dc"], dd = p["dd"];
  if (!(dc > cc && cc > dd && dd > cd)) {
    throw ScenarioError(fmt::format(
        "twin-pd payoffs must satisfy DC > CC > DD > CD (got DC={}, CC={}, DD={}, CD={})", dc,
        cc, dd, cd));
  }
  const double rho = p["rho"];
  CausalModel m;
  m.variables = {{std::string(kDecisionFn), {"C", "D"}}, {"A1", {"C", "D"}}, {"A2", {"C", "D"}}};
  m.cpts = {
      Cpt{std::string(kDecisionFn), {}, {bernoulli_row(0.5)}},
      Cpt{"A1", {std::string(kDecisionFn)}, identity_rows(2)},
      // The twin copies the shared function's output with probability rho.
      Cpt{"A2", {std::string(kDecisionFn)}, {bernoulli_row(rho), bernoulli_row(1.0 - rho)}},
  };
  m.utility = {{"A1", "A2"}, {cc, cd, dc, dd}};
  return DecisionProblem{std::move(m), "A1", std::string(kDecisionFn), {}};
}

}  // namespace

std::string_view to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::kSmokingEdt: return "smoking-edt";
    case ScenarioId::kSmokingCdt: return "smoking-cdt";
    case ScenarioId::kNewcomb: return "newcomb";
    case ScenarioId::kParfit: return "parfit";
    case ScenarioId::kTwinPd: return "twin-pd";
  }
  return "?";
}

std::optional<ScenarioId> parse_scenario_id(std::string_view text) {
  for (ScenarioId id : kAllScenarios) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::span<const ScenarioId> all_scenarios() { return kAllScenarios; }

std::vector<ParameterInfo> parameters(ScenarioId id) {
  switch (id) {
    case ScenarioId::kSmokingEdt:
      return {
          {"smoke_prior", 0.5, true, "P(smoke) before deciding"},
          {"gene_if_smoke", 0.75, true, "share of smokers with the gene"},
          {"gene_if_no_smoke", 0.10, true, "share of non-smokers with the gene"},
          {"cancer_if_gene", 0.8, true, "P(cancer | gene)"},
          {"cancer_if_no_gene", 0.2, true, "P(cancer | no gene)"},
          {"smoke_utility", 5.0, false, "utility of smoking"},
          {"cancer_utility", -100.0, false, "utility of cancer"},
      };
    case ScenarioId::kSmokingCdt:
      // With a 0.5 gene prior, 12/13 and 4/13 reproduce the population data
      // (75% of smokers and 10% of non-smokers carry the gene).
      return {
          {"gene_prior", 0.5, true, "P(gene)"},
          {"smoke_if_gene", 12.0 / 13.0, true, "P(smoke | gene)"},
          {"smoke_if_no_gene", 4.0 / 13.0, true, "P(smoke | no gene)"},
          {"cancer_if_gene", 0.8, true, "P(cancer | gene)"},
          {"cancer_if_no_gene", 0.2, true, "P(cancer | no gene)"},
          {"smoke_utility", 5.0, false, "utility of smoking"},
          {"cancer_utility", -100.0, false, "utility of cancer"},
      };
    case ScenarioId::kNewcomb:
      return {
          {"accuracy", 0.99, true, "predictor accuracy"},
          {"prediction", std::nullopt, true, "prior P(predictor anticipates two-boxing)"},
          {"box_a", 1000.0, false, "transparent box"},
          {"box_b", 1000000.0, false, "opaque box when filled"},
      };
    case ScenarioId::kParfit:
      return {
          {"accuracy", 0.7, true, "driver's lie-detection accuracy"},
          {"prediction", std::nullopt, true, "prior P(driver anticipates payment)"},
          {"payment", 1000.0, false, "reward paid in town"},
          {"stranded_utility", -1000000.0, false, "utility of being left in the desert"},
      };
    case ScenarioId::kTwinPd:
      return {
          {"rho", 1.0, true, "P(twin outputs the same action)"},
          {"cc", 7.0, false, "payoff for mutual cooperation"},
          {"cd", 1.0, false, "payoff for cooperating against defection"},
          {"dc", 10.0, false, "payoff for defecting against cooperation"},
          {"dd", 4.0, false, "payoff for mutual defection"},
      };
  }
  return {};
}

DecisionProblem build_scenario(const ScenarioParams& params) {
  const Params p(params);
  switch (params.id) {
    case ScenarioId::kSmokingEdt: return smoking_edt(p);
    case ScenarioId::kSmokingCdt: return smoking_cdt(p);
    case ScenarioId::kNewcomb: return newcomb(p, params.theory);
    case ScenarioId::kParfit: return parfit(p, params.theory);
    case ScenarioId::kTwinPd: return twin_pd(p);
  }
  throw ScenarioError("unknown scenario");
}

}  // namespace fdtsim::scenarios
