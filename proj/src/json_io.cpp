#include "gkcs/json_io.hpp"

namespace gkcs::json_io {

using nlohmann::json;
using namespace gkcs::states;

namespace {

json complex_array(const std::vector<Complex>& v) {
  json out = json::array();
  for (const Complex& c : v) out.push_back({c.real(), c.imag()});
  return out;
}

std::vector<Complex> complex_vector(const json& j) {
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("state json: complex entries must be [re, im]");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

}  // namespace

json combined_to_json(const CombinedCS& cs) {
  json j;
  j["mode"] = cs.discrete.mode == SpectrumMode::shifted ? "shifted" : "unshifted";
  j["kappa"] = cs.discrete.kappa;
  j["labels"] = {
      {"J", cs.discrete.labels.J},
      {"gamma", cs.discrete.labels.gamma},
      {"Jprime", cs.discrete.labels.Jprime},
      {"gamma_prime", cs.discrete.labels.gamma_prime},
      {"running", cs.discrete.labels.running == RunningIndex::level_n ? "n" : "l"},
      {"fixed_value", cs.discrete.labels.fixed_value},
      {"K", cs.continuous.K},
      {"theta", cs.continuous.theta},
  };
  j["coeffs"] = complex_array(cs.discrete.coeffs);
  j["tail_bound"] = cs.discrete.tail_bound;
  j["grid"] = {{"nodes", cs.continuous.grid.nodes},
               {"weights", cs.continuous.grid.weights},
               {"eps_max", cs.continuous.grid.eps_max}};
  j["values"] = complex_array(cs.continuous.values);
  j["norm_const"] = cs.continuous.norm_const;
  j["phase_sign"] =
      cs.continuous.sign == PhaseSign::negative ? "negative" : "positive";
  j["beta"] = cs.beta;
  j["f"] = cs.f_value;
  j["g"] = cs.g_value;
  return j;
}

CombinedCS combined_from_json(const json& j) {
  CombinedCS cs;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode != "shifted" && mode != "unshifted")
    throw std::invalid_argument("state json: unknown mode '" + mode + "'");
  cs.discrete.mode =
      mode == "shifted" ? SpectrumMode::shifted : SpectrumMode::unshifted;
  cs.discrete.kappa = j.at("kappa").get<double>();

  const json& labels = j.at("labels");
  cs.discrete.labels.J = labels.at("J").get<double>();
  cs.discrete.labels.gamma = labels.at("gamma").get<double>();
  cs.discrete.labels.Jprime = labels.at("Jprime").get<double>();
  cs.discrete.labels.gamma_prime = labels.at("gamma_prime").get<double>();
  const std::string running = labels.at("running").get<std::string>();
  if (running != "n" && running != "l")
    throw std::invalid_argument("state json: unknown running index '" + running + "'");
  cs.discrete.labels.running =
      running == "n" ? RunningIndex::level_n : RunningIndex::level_l;
  cs.discrete.labels.fixed_value = labels.at("fixed_value").get<int>();

  cs.discrete.coeffs = complex_vector(j.at("coeffs"));
  cs.discrete.tail_bound = j.at("tail_bound").get<double>();

  cs.continuous.K = labels.at("K").get<double>();
  cs.continuous.theta = labels.at("theta").get<double>();
  const json& grid = j.at("grid");
  cs.continuous.grid.nodes = grid.at("nodes").get<std::vector<double>>();
  cs.continuous.grid.weights = grid.at("weights").get<std::vector<double>>();
  cs.continuous.grid.eps_max = grid.at("eps_max").get<double>();
  cs.continuous.values = complex_vector(j.at("values"));
  cs.continuous.norm_const = j.at("norm_const").get<double>();
  const std::string sign = j.at("phase_sign").get<std::string>();
  if (sign != "negative" && sign != "positive")
    throw std::invalid_argument("state json: unknown phase_sign '" + sign + "'");
  cs.continuous.sign =
      sign == "negative" ? PhaseSign::negative : PhaseSign::positive;

  cs.beta = j.at("beta").get<double>();
  cs.f_value = j.at("f").get<double>();
  cs.g_value = j.at("g").get<double>();

  if (cs.continuous.grid.nodes.size() != cs.continuous.grid.weights.size() ||
      cs.continuous.grid.nodes.size() != cs.continuous.values.size())
    throw std::invalid_argument("state json: grid/value length mismatch");
  return cs;
}

}  // namespace gkcs::json_io
