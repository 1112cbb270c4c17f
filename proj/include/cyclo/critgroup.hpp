#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclo/abelian_group.hpp"
#include "cyclo/carries.hpp"
#include "cyclo/ell3.hpp"
#include "cyclo/field.hpp"
#include "cyclo/kirchhoff.hpp"
#include "cyclo/snf.hpp"

namespace cyclo {

enum class Method { Formula, Bruteforce, Both };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::Formula: return "formula";
    case Method::Bruteforce: return "bruteforce";
    case Method::Both: return "both";
  }
  return "unknown";
}

inline Method parse_method(const std::string& s) {
  if (s == "formula") return Method::Formula;
  if (s == "bruteforce") return Method::Bruteforce;
  if (s == "both") return Method::Both;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

/// (Z/u')^k x (Z/v')^(q-k-1) where u', v' are the prime-to-p parts of u, v.
struct CoprimePart {
  BigInt u_prime, v_prime;
  AbelianGroupDesc group;
  /// False when u' or v' could not be factored; group is then empty.
  bool factored = true;

  friend bool operator==(const CoprimePart&, const CoprimePart&) = default;
};

inline CoprimePart coprime_part(const Params& prm, std::uint64_t rho_iterations = 50'000'000) {
  const BigInt p = from_u64(prm.p());
  CoprimePart out;
  out.u_prime = strip_prime(prm.u(), p);
  out.v_prime = strip_prime(prm.v(), p);
  try {
    out.group.add_cyclic(factorize(out.u_prime, rho_iterations), prm.k());
    out.group.add_cyclic(factorize(out.v_prime, rho_iterations), prm.q() - prm.k() - 1);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FactorizationBoundExceeded) throw;
    out.group = AbelianGroupDesc{};
    out.factored = false;
  }
  return out;
}

struct CriticalGroupOptions {
  BruteforceOptions bruteforce;
  std::uint64_t enumeration_bound = kDefaultEnumerationBound;
  unsigned threads = 1;
};

struct CriticalGroupResult {
  Params params;
  AbelianGroupDesc group;
  Method method = Method::Formula;
  PMultiplicities p_part;
  BigInt u_prime, v_prime;
  Factorization order;
  std::vector<std::string> checks;

  friend bool operator==(const CriticalGroupResult&, const CriticalGroupResult&) = default;
};

namespace detail {

inline AbelianGroupDesc assemble(const Params& prm, const PMultiplicities& p_part, const AbelianGroupDesc& coprime) {
  AbelianGroupDesc g = coprime;
  g.free_rank = 1;
  for (const auto& [j, e] : p_part.entries())
    if (j > 0) g.add_divisor(from_u64(prm.p()), j, e);
  return g;
}

}  // namespace detail

/// p-part from the closed forms: theorem_e3 for ell = 3, theorem_m otherwise.
inline PMultiplicities formula_p_part(const Params& prm, const CriticalGroupOptions& opt = {}) {
  if (prm.ell() == 3) return theorem_e3(prm.p(), prm.t());
  return theorem_m(prm, opt.enumeration_bound, opt.threads);
}

inline CriticalGroupResult critical_group(const Params& prm, Method method, const CriticalGroupOptions& opt = {}) {
  CriticalGroupResult res{prm, {}, method, {}, 0, 0, kirchhoff_order(prm), {}};
  const CoprimePart cop = coprime_part(prm);
  res.u_prime = cop.u_prime;
  res.v_prime = cop.v_prime;

  std::optional<AbelianGroupDesc> formula_group;
  if (method != Method::Bruteforce) {
    res.p_part = formula_p_part(prm, opt);
    res.checks.push_back(prm.ell() == 3 ? "p-part from C(2t) coefficients" : "p-part from carry profile enumeration");
    res.checks.push_back("p-part conservation: sum e_j = q - 1, sum j e_j = v_p(|C|)");
    if (cop.factored) {
      formula_group = detail::assemble(prm, res.p_part, cop.group);
      if (formula_group->order_factorization() != res.order)
        throw Error(ErrorCode::ConservationViolation, "formula group order differs from u^k v^(q-k-1)/q");
      res.checks.push_back("formula group order equals u^k v^(q-k-1)/q");
      res.group = *formula_group;
    } else {
      res.group = detail::assemble(prm, res.p_part, {});
      res.checks.push_back("prime-to-p part left unfactored");
    }
  }
  if (method != Method::Formula) {
    const FieldTable field(prm, std::max<std::uint64_t>(opt.bruteforce.max_q, 1));
    const BruteforceResult bf = critical_group_bruteforce(field, opt.bruteforce);
    for (const auto& c : bf.checks) res.checks.push_back("bruteforce (" + bf.mode + "): " + c);
    if (method == Method::Bruteforce) {
      res.group = bf.group;
      res.p_part = bf.p_part;
    } else {
      if (!(bf.p_part == res.p_part))
        throw Error(ErrorCode::MethodMismatch, "p-parts differ between formula and bruteforce");
      if (formula_group && !(*formula_group == bf.group))
        throw Error(ErrorCode::MethodMismatch, "critical groups differ between formula and bruteforce");
      res.checks.push_back("formula and bruteforce groups agree");
    }
  }
  return res;
}

}  // namespace cyclo
