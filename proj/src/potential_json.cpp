#include "nonrecip/potential_json.hpp"

#include <string>

#include "nonrecip/errors.hpp"
#include "overloaded.hpp"

namespace nonrecip {

using nlohmann::json;

namespace {

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParameterError(std::string("potential json: missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) throw ParameterError("potential json: complex value must be {re, im}");
  const double re = j.contains("re") ? number_field(j, "re") : 0.0;
  const double im = j.contains("im") ? number_field(j, "im") : 0.0;
  return {re, im};
}

json potential_to_json(const PotentialSpec& spec) {
  return std::visit(
      detail::Overloaded{
          [](const MorseScatteringParams& p) {
            return json{{"model", "morse_scattering"}, {"v", p.v}, {"mu", p.mu}};
          },
          [](const MorsePenetratingParams& p) {
            return json{{"model", "morse_penetrating"}, {"v", p.v}, {"mu", p.mu}};
          },
          [](const DeltaCombParams& p) {
            json sites = json::array();
            for (const DeltaSite& s : p.sites) {
              sites.push_back({{"position", s.position}, {"strength", complex_to_json(s.strength)}});
            }
            return json{{"model", "delta_comb"}, {"sites", sites}};
          },
      },
      spec);
}

PotentialSpec potential_from_json(const json& j) {
  if (!j.is_object() || !j.contains("model") || !j.at("model").is_string()) {
    throw ParameterError("potential json: expected an object with a string 'model'");
  }
  const std::string model = j.at("model").get<std::string>();
  PotentialSpec spec;
  if (model == "morse_scattering") {
    spec = MorseScatteringParams{number_field(j, "v"), number_field(j, "mu")};
  } else if (model == "morse_penetrating") {
    spec = MorsePenetratingParams{number_field(j, "v"), number_field(j, "mu")};
  } else if (model == "double_delta") {
    if (!j.contains("lambda")) throw ParameterError("potential json: missing 'lambda'");
    spec = make_double_delta(complex_from_json(j.at("lambda")), number_field(j, "a"));
  } else if (model == "delta_comb") {
    if (!j.contains("sites") || !j.at("sites").is_array()) {
      throw ParameterError("potential json: delta_comb needs a 'sites' array");
    }
    DeltaCombParams comb;
    for (const json& s : j.at("sites")) {
      if (!s.contains("strength")) throw ParameterError("potential json: site without strength");
      comb.sites.push_back({number_field(s, "position"), complex_from_json(s.at("strength"))});
    }
    spec = comb;
  } else {
    throw ParameterError("potential json: unknown model '" + model + "'");
  }
  validate(spec);
  return spec;
}

}  // namespace nonrecip
