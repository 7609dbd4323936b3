#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "locohom/errors.hpp"
#include "locohom/extension.hpp"

namespace locohom {

enum class Relation { LessEq, Eq, GreaterEq };

struct LinearConstraint {
  std::vector<std::pair<int, long long>> terms;  // (variable, coefficient)
  Relation rel = Relation::Eq;
  long long rhs = 0;
};

struct ILPVariable {
  std::string name;
  long long lower = 0;
  long long upper = 0;
};

inline constexpr long long kUnbounded = std::numeric_limits<long long>::max();

struct ILPModel {
  std::vector<ILPVariable> variables;
  std::vector<LinearConstraint> constraints;
  // Set when the builder already knows the model cannot be satisfied.
  std::string infeasible_reason;

  int add_variable(std::string name, long long lower, long long upper) {
    variables.push_back({std::move(name), lower, upper});
    return static_cast<int>(variables.size()) - 1;
  }
  void add_constraint(std::vector<std::pair<int, long long>> terms, Relation rel, long long rhs) {
    for (const auto& term : terms) {
      if (term.first < 0 || term.first >= static_cast<int>(variables.size())) {
        throw PreconditionError("constraint references an undeclared variable");
      }
    }
    constraints.push_back({std::move(terms), rel, rhs});
  }
};

/// Plain listing of a model for inspection.
inline std::string model_to_text(const ILPModel& m) {
  std::ostringstream out;
  out << "find\n";
  for (const auto& v : m.variables) {
    out << "  " << v.lower << " <= " << v.name << " <= ";
    if (v.upper == kUnbounded) out << "inf";
    else out << v.upper;
    out << "\n";
  }
  out << "subject to\n";
  for (const auto& c : m.constraints) {
    out << " ";
    if (c.terms.empty()) out << " 0";
    bool first = true;
    for (auto [v, a] : c.terms) {
      out << ' ' << (a < 0 ? "- " : (first ? "" : "+ "));
      long long mag = a < 0 ? -a : a;
      if (mag != 1) out << mag << ' ';
      out << m.variables[static_cast<std::size_t>(v)].name;
      first = false;
    }
    out << (c.rel == Relation::LessEq ? " <= " : c.rel == Relation::Eq ? " = " : " >= ") << c.rhs << "\n";
  }
  if (!m.infeasible_reason.empty()) out << "# infeasible: " << m.infeasible_reason << "\n";
  return out.str();
}

inline bool satisfies(const ILPModel& m, const std::vector<long long>& x) {
  if (x.size() != m.variables.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < m.variables[i].lower || x[i] > m.variables[i].upper) return false;
  }
  for (const auto& c : m.constraints) {
    long long s = 0;
    for (auto [v, a] : c.terms) s += a * x[static_cast<std::size_t>(v)];
    if (c.rel == Relation::LessEq && s > c.rhs) return false;
    if (c.rel == Relation::Eq && s != c.rhs) return false;
    if (c.rel == Relation::GreaterEq && s < c.rhs) return false;
  }
  return true;
}

namespace detail {

class FeasibilitySearch {
 public:
  explicit FeasibilitySearch(const ILPModel& m) : m_(m) {}

  std::optional<std::vector<long long>> run() {
    std::vector<long long> lo, hi;
    for (const auto& v : m_.variables) {
      if (v.upper == kUnbounded || v.lower == std::numeric_limits<long long>::min()) {
        throw PreconditionError("variable " + v.name + " is unbounded");
      }
      lo.push_back(v.lower);
      hi.push_back(v.upper);
    }
    if (!propagate(lo, hi)) return std::nullopt;
    if (search(lo, hi)) return solution_;
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  static long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

  // Tightens bounds from sum(a_i x_i) <= rhs; false on contradiction.
  static bool tighten_upper(const LinearConstraint& c, long long rhs, int sign, std::vector<long long>& lo,
                            std::vector<long long>& hi, bool& changed) {
    long long min_act = 0;
    for (auto [v, a0] : c.terms) {
      long long a = a0 * sign;
      min_act += a > 0 ? a * lo[static_cast<std::size_t>(v)] : a * hi[static_cast<std::size_t>(v)];
    }
    if (min_act > rhs) return false;
    for (auto [v, a0] : c.terms) {
      long long a = a0 * sign;
      if (a == 0) continue;
      auto i = static_cast<std::size_t>(v);
      long long own = a > 0 ? a * lo[i] : a * hi[i];
      long long slack = rhs - (min_act - own);
      if (a > 0) {
        long long bound = floor_div(slack, a);
        if (bound < hi[i]) {
          hi[i] = bound;
          changed = true;
        }
      } else {
        long long bound = ceil_div(slack, a);
        if (bound > lo[i]) {
          lo[i] = bound;
          changed = true;
        }
      }
      if (lo[i] > hi[i]) return false;
    }
    return true;
  }

  bool propagate(std::vector<long long>& lo, std::vector<long long>& hi) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] > hi[i]) return false;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : m_.constraints) {
        if (c.rel != Relation::GreaterEq && !tighten_upper(c, c.rhs, 1, lo, hi, changed)) return false;
        if (c.rel != Relation::LessEq && !tighten_upper(c, -c.rhs, -1, lo, hi, changed)) return false;
      }
    }
    return true;
  }

  bool search(std::vector<long long>& lo, std::vector<long long>& hi) {
    ++nodes_;
    std::size_t pick = lo.size();
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] < hi[i]) {
        pick = i;
        break;
      }
    }
    if (pick == lo.size()) {
      if (!satisfies(m_, lo)) return false;
      solution_ = lo;
      return true;
    }
    for (long long value = lo[pick]; value <= hi[pick]; ++value) {
      auto lo2 = lo;
      auto hi2 = hi;
      lo2[pick] = hi2[pick] = value;
      if (propagate(lo2, hi2) && search(lo2, hi2)) return true;
    }
    return false;
  }

  const ILPModel& m_;
  std::vector<long long> solution_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Lexicographically least feasible integer assignment (in variable order),
/// or nullopt. Throws on unbounded variables.
inline std::optional<std::vector<long long>> solve_feasibility(const ILPModel& m) {
  return detail::FeasibilitySearch(m).run();
}

// ---------------------------------------------------------------------------
// Models of the homomorphism frameworks.

/// Host family: extensions of D_H whose components all have one of `types`
/// and whose type counts x_T satisfy `ch` (variable i of `ch` is x_{types[i]}).
struct TargetDescription {
  Graph d_h;
  int c_prime = 0;
  std::vector<TypeClass> types;
  std::vector<LinearConstraint> ch;
};

/// An extension of D_G given by its type counts over the guest census,
/// paired with a host type it maps to.
struct MappedExtension {
  std::vector<int> counts;
  int host_type = 0;
};


/// Pair variable bound: how often the extension fits into the guest census.
inline long long pair_bound(const std::vector<int>& tc_g, const std::vector<int>& counts) {
  long long best = kUnbounded;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] > 0) best = std::min<long long>(best, tc_g[g] / counts[g]);
  }
  return best == kUnbounded ? 0 : best;
}

/// Constraints (CH, S1, S2, S3) for mode S or (CH, B1, B2) for mode B.
/// wsm lists (guest type, host type) pairs and is required for mode S.
inline ILPModel build_model_SB(const std::vector<int>& tc_g, const std::optional<std::vector<std::pair<int, int>>>& wsm,
                               const std::vector<MappedExtension>& mapped, const TargetDescription& desc, bool bijective,
                               const std::vector<long long>& type_upper = {}) {
  if (!bijective && !wsm) throw PreconditionError("mode S needs the weak mapping set");
  ILPModel m;
  const std::size_t nt = desc.types.size();
  std::vector<long long> pair_ub;
  for (const auto& e : mapped) pair_ub.push_back(pair_bound(tc_g, e.counts));
  for (std::size_t t = 0; t < nt; ++t) {
    long long ub = 0;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      if (mapped[i].host_type == static_cast<int>(t)) ub += pair_ub[i];
    }
    if (t < type_upper.size()) ub = std::min(ub, type_upper[t]);
    for (const auto& c : desc.ch) {
      if (c.rel == Relation::Eq && c.terms.size() == 1 && c.terms[0].first == static_cast<int>(t) && c.terms[0].second == 1) {
        ub = std::min(ub, std::max<long long>(c.rhs, 0));
      }
    }
    m.add_variable("x_T" + std::to_string(t + 1), 0, ub);
  }
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    m.add_variable("x_E" + std::to_string(i + 1) + "_T" + std::to_string(mapped[i].host_type + 1), 0, pair_ub[i]);
  }
  for (const auto& c : desc.ch) m.add_constraint(c.terms, c.rel, c.rhs);
  const int first_pair = static_cast<int>(nt);
  // S1 / B1
  for (std::size_t g = 0; g < tc_g.size(); ++g) {
    std::vector<std::pair<int, long long>> terms;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      if (mapped[i].counts[g] > 0) terms.emplace_back(first_pair + static_cast<int>(i), mapped[i].counts[g]);
    }
    m.add_constraint(std::move(terms), bijective ? Relation::Eq : Relation::LessEq, tc_g[g]);
  }
  // S2 / B2
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<std::pair<int, long long>> terms;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      if (mapped[i].host_type == static_cast<int>(t)) terms.emplace_back(first_pair + static_cast<int>(i), 1);
    }
    terms.emplace_back(static_cast<int>(t), -1);
    m.add_constraint(std::move(terms), Relation::Eq, 0);
  }
  // S3
  if (!bijective) {
    for (std::size_t g = 0; g < tc_g.size(); ++g) {
      if (tc_g[g] == 0) continue;
      std::vector<std::pair<int, long long>> terms;
      for (auto [tg, th] : *wsm) {
        if (tg == static_cast<int>(g)) terms.emplace_back(th, 1);
      }
      if (terms.empty() && m.infeasible_reason.empty()) {
        m.infeasible_reason = "guest type " + std::to_string(g + 1) + " maps weakly to no host type";
      }
      m.add_constraint(std::move(terms), Relation::GreaterEq, 1);
    }
  }
  return m;
}

/// Constraints (I1, I2): candidate pairs must use every guest component and
/// every host component exactly.
inline ILPModel build_model_I(const std::vector<int>& tc_g, const std::vector<int>& tc_h, const std::vector<MappedExtension>& icm) {
  ILPModel m;
  for (std::size_t i = 0; i < icm.size(); ++i) {
    long long ub = tc_h[static_cast<std::size_t>(icm[i].host_type)];
    bool empty = std::all_of(icm[i].counts.begin(), icm[i].counts.end(), [](int c) { return c == 0; });
    if (!empty) ub = std::min(ub, pair_bound(tc_g, icm[i].counts));
    m.add_variable("x_P" + std::to_string(i + 1) + "_T" + std::to_string(icm[i].host_type + 1), 0, ub);
  }
  for (std::size_t g = 0; g < tc_g.size(); ++g) {
    std::vector<std::pair<int, long long>> terms;
    for (std::size_t i = 0; i < icm.size(); ++i) {
      if (icm[i].counts[g] > 0) terms.emplace_back(static_cast<int>(i), icm[i].counts[g]);
    }
    m.add_constraint(std::move(terms), Relation::Eq, tc_g[g]);
  }
  for (std::size_t t = 0; t < tc_h.size(); ++t) {
    std::vector<std::pair<int, long long>> terms;
    for (std::size_t i = 0; i < icm.size(); ++i) {
      if (icm[i].host_type == static_cast<int>(t)) terms.emplace_back(static_cast<int>(i), 1);
    }
    m.add_constraint(std::move(terms), Relation::Eq, tc_h[t]);
  }
  return m;
}

}  // namespace locohom
