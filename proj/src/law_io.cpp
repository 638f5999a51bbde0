#include "conclab/law_io.hpp"

#include <sstream>

namespace conclab {

using nlohmann::json;

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s));
    const boost::multiprecision::cpp_int num(s.substr(0, slash));
    const boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/"
     << boost::multiprecision::denominator(r);
  return os.str();
}

json law_to_json(const ScalarLaw& law) {
  const auto& v = law.variant();
  if (const auto* tp = std::get_if<TwoPointLaw>(&v)) {
    return {{"type", "two_point"}, {"theta", tp->theta}, {"alpha", tp->alpha}};
  }
  if (const auto* ep = std::get_if<SymmetricExpPowerLaw>(&v)) {
    return {{"type", "sym_exp_power"}, {"p", ep->p}, {"scale", ep->scale}};
  }
  if (const auto* fd = std::get_if<FiniteDiscreteLaw>(&v)) {
    json atoms = json::array();
    for (std::size_t i = 0; i < fd->values.size(); ++i)
      atoms.push_back({{"value", fd->values[i]},
                       {"prob", rational_to_string(fd->probs[i])}});
    return {{"type", "finite_discrete"}, {"atoms", atoms}};
  }
  const auto& tr = std::get<TruncatedLaw>(v);
  return {{"type", "truncated"},
          {"base", law_to_json(*tr.base)},
          {"level", tr.level}};
}

ScalarLaw law_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("law literal must be an object with 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "two_point")
    return two_point_law(j.at("theta").get<double>(),
                         j.at("alpha").get<double>());
  if (type == "sym_exp_power")
    return make_exp_power(j.at("p").get<double>(),
                          j.at("scale").get<double>());
  if (type == "finite_discrete") {
    std::vector<std::pair<double, Rational>> atoms;
    for (const auto& a : j.at("atoms"))
      atoms.emplace_back(a.at("value").get<double>(),
                         rational_from_string(a.at("prob").get<std::string>()));
    return finite_discrete_law(std::move(atoms));
  }
  if (type == "truncated")
    return truncate(law_from_json(j.at("base")), j.at("level").get<double>());
  throw std::invalid_argument("unknown law type: '" + type + "'");
}

ScalarLaw law_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("law literal parse error: ") +
                                e.what());
  }
  return law_from_json(j);
}

}  // namespace conclab
