#include "scsamp/serialize.hpp"

#include <stdexcept>
#include <string>

namespace scsamp {
namespace {

using nlohmann::json;

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json labels_json(const Labels& labels) {
  json out = json::array();
  for (const auto& l : labels) out.push_back(complex_json(l.amp()));
  return out;
}

Labels labels_from(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of labels");
  Labels out;
  out.reserve(j.size());
  for (const auto& e : j) out.emplace_back(complex_from(e));
  return out;
}

std::size_t modes_from(const json& j, const char* kind) {
  if (!j.is_object() || j.value("kind", "") != kind) {
    throw std::invalid_argument(std::string("expected a state of kind '") + kind + "'");
  }
  const auto& m = j.at("modes");
  if (!m.is_number_unsigned() || m.get<std::size_t>() == 0) throw std::invalid_argument("modes must be positive");
  return m.get<std::size_t>();
}

}  // namespace

json to_json(const PureCSS& s) {
  json terms = json::array();
  for (const auto& t : s.terms()) terms.push_back({{"coeff", complex_json(t.coeff)}, {"labels", labels_json(t.labels)}});
  return {{"kind", "pure"}, {"modes", s.modes()}, {"terms", std::move(terms)}};
}

json to_json(const DyadMix& m) {
  json terms = json::array();
  for (const auto& t : m.terms()) {
    terms.push_back({{"coeff", complex_json(t.coeff)}, {"ket", labels_json(t.ket)}, {"bra", labels_json(t.bra)}});
  }
  return {{"kind", "dyads"}, {"modes", m.modes()}, {"terms", std::move(terms)}};
}

PureCSS pure_from_json(const json& j) try {
  PureCSS out(modes_from(j, "pure"));
  for (const auto& t : j.at("terms")) out.add_term(complex_from(t.at("coeff")), labels_from(t.at("labels")));
  return out;
} catch (const json::exception& e) {
  throw std::invalid_argument(std::string("malformed pure state: ") + e.what());
}

DyadMix dyads_from_json(const json& j) try {
  DyadMix out(modes_from(j, "dyads"));
  for (const auto& t : j.at("terms")) {
    out.add_term(complex_from(t.at("coeff")), labels_from(t.at("ket")), labels_from(t.at("bra")));
  }
  return out;
} catch (const json::exception& e) {
  throw std::invalid_argument(std::string("malformed dyad mixture: ") + e.what());
}

}  // namespace scsamp
