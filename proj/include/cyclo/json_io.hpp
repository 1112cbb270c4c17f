#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "cyclo/critgroup.hpp"

namespace cyclo {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

namespace detail {

/// Integers that fit in 64 bits are JSON numbers, larger ones strings.
inline Json big_to_json(const BigInt& n) {
  if (n >= 0 && fits_u64(n)) return to_u64(n);
  if (n < 0 && n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

inline BigInt big_from_json(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  throw Error(ErrorCode::InvalidArgument, "expected an integer in JSON");
}

}  // namespace detail

inline Json params_to_json(const Params& prm) {
  Json j;
  j["p"] = prm.p();
  j["ell"] = prm.ell();
  j["t"] = prm.t();
  j["q"] = detail::big_to_json(prm.q());
  j["k"] = detail::big_to_json(prm.k());
  j["u"] = detail::big_to_json(prm.u());
  j["v"] = detail::big_to_json(prm.v());
  return j;
}

inline Json multiplicities_to_json(const PMultiplicities& m) {
  Json j = Json::object();
  for (const auto& [e, mult] : m.entries()) j[std::to_string(e)] = detail::big_to_json(mult);
  return j;
}

inline Json to_json(const CriticalGroupResult& r) {
  Json j;
  j["schema"] = kJsonSchema;
  j["params"] = params_to_json(r.params);
  j["method"] = to_string(r.method);
  j["free_rank"] = r.group.free_rank;
  Json divs = Json::array();
  for (const auto& [prime, part] : r.group.divisors())
    for (const auto& [exp, mult] : part) divs.push_back(Json::array({prime.get_str(), exp, detail::big_to_json(mult)}));
  j["elementary_divisors"] = divs;
  j["p_multiplicities"] = multiplicities_to_json(r.p_part);
  j["coprime_part"] = {{"u_prime", detail::big_to_json(r.u_prime)}, {"v_prime", detail::big_to_json(r.v_prime)}};
  Json order = Json::object();
  for (const auto& [prime, exp] : r.order) order[prime.get_str()] = exp;
  j["order_factorization"] = order;
  j["checks"] = r.checks;
  return j;
}

inline CriticalGroupResult result_from_json(const Json& j) {
  if (j.at("schema").get<int>() != kJsonSchema) throw Error(ErrorCode::InvalidArgument, "unsupported schema");
  const Json& pj = j.at("params");
  CriticalGroupResult r{Params::validate(pj.at("p").get<std::uint64_t>(), pj.at("ell").get<std::uint64_t>(),
                                         pj.at("t").get<std::uint64_t>()),
                        {},
                        parse_method(j.at("method").get<std::string>()),
                        {},
                        0,
                        0,
                        {},
                        {}};
  r.group.free_rank = j.at("free_rank").get<std::uint64_t>();
  for (const auto& d : j.at("elementary_divisors"))
    r.group.add_divisor(BigInt(d.at(0).get<std::string>()), d.at(1).get<std::uint64_t>(), detail::big_from_json(d.at(2)));
  for (const auto& [e, mult] : j.at("p_multiplicities").items())
    r.p_part.set(std::stoull(e), detail::big_from_json(mult));
  r.u_prime = detail::big_from_json(j.at("coprime_part").at("u_prime"));
  r.v_prime = detail::big_from_json(j.at("coprime_part").at("v_prime"));
  for (const auto& [prime, exp] : j.at("order_factorization").items()) r.order[BigInt(prime)] = exp.get<std::uint64_t>();
  r.checks = j.at("checks").get<std::vector<std::string>>();
  return r;
}

/// Text form: parameters, then one elementary divisor class per line.
inline std::string to_text(const CriticalGroupResult& r) {
  std::ostringstream os;
  os << r.params.label() << " q=" << r.params.q() << " k=" << r.params.k() << " u=" << r.params.u()
     << " v=" << r.params.v() << " method=" << to_string(r.method) << '\n';
  os << r.group;
  os << "p-multiplicities " << r.p_part << '\n';
  return os.str();
}

}  // namespace cyclo
