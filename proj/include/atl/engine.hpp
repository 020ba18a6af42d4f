#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "atl/errors.hpp"
#include "atl/formula.hpp"
#include "atl/game_structure.hpp"
#include "atl/pre.hpp"
#include "atl/state_set.hpp"

namespace atl {

enum class pre_backend { direct, relational };

inline std::string_view to_string(pre_backend b) {
  return b == pre_backend::direct ? "direct" : "relational";
}

struct check_options {
  pre_backend backend = pre_backend::relational;
  bool collect_trace = false;
  // Atoms missing from the structure evaluate to the empty set instead of
  // raising unknown_proposition_error; each one is reported as a warning.
  bool allow_unknown_atoms = false;
};

struct check_stats {
  std::uint64_t pre_calls = 0;
  std::uint64_t fixpoint_iterations = 0;      // summed over temporal nodes
  std::uint64_t max_fixpoint_iterations = 0;  // largest single evaluation
  double wall_ms = 0.0;
};

/// Satisfaction set of one subformula, in evaluation (post) order.
struct node_valuation {
  formula node;
  state_set sat;
  std::uint64_t iterations = 0;  // fixpoint rounds; 0 for non-temporal nodes
};

struct check_result {
  formula root;
  state_set satisfying;
  check_stats stats;
  std::vector<node_valuation> trace;
  std::vector<std::string> warnings;
};

namespace detail {

/// Shared Pre dispatch. Caches one relation per distinct coalition for the
/// relational backend, so nested operators over the same coalition reuse it.
class pre_kernel {
public:
  pre_kernel(const game_structure& s, pre_backend backend, check_stats* stats = nullptr)
      : s_(s), backend_(backend), stats_(stats) {}

  state_set pre(const coalition& a, const state_set& theta) {
    if (stats_)
      ++stats_->pre_calls;
    if (backend_ == pre_backend::direct)
      return pre_direct(s_, a, theta);
    auto it = relations_.find(a);
    if (it == relations_.end())
      it = relations_.emplace(a, build_relation(s_, a)).first;
    return pre_relational(it->second, s_, theta);
  }

  const game_structure& structure() const { return s_; }

private:
  const game_structure& s_;
  pre_backend backend_;
  check_stats* stats_;
  std::map<coalition, coalition_relation> relations_;
};

struct fixpoint_outcome {
  state_set result;
  std::uint64_t iterations = 0;
};

// The three fixpoint loops. Each terminates within |Q|+1 iterations: the
// iterates form a monotone chain over subsets of Q.

inline fixpoint_outcome fix_always(pre_kernel& k, const coalition& a, const state_set& phi) {
  fixpoint_outcome out;
  state_set z = state_set::full(phi.universe_size());
  state_set z1 = phi;
  while (!z.is_subset_of(z1)) {
    ++out.iterations;
    z = z1;
    z1 = k.pre(a, z);
    z1 &= phi;
  }
  out.result = std::move(z);
  return out;
}

inline fixpoint_outcome fix_eventually(pre_kernel& k, const coalition& a, const state_set& phi) {
  fixpoint_outcome out;
  state_set z = state_set::empty(phi.universe_size());
  state_set z1 = phi;
  while (!z1.is_subset_of(z)) {
    ++out.iterations;
    z |= z1;
    z1 = k.pre(a, z);
  }
  out.result = std::move(z);
  return out;
}

inline fixpoint_outcome fix_until(pre_kernel& k, const coalition& a, const state_set& phi1,
                                  const state_set& phi2) {
  fixpoint_outcome out;
  state_set z = state_set::empty(phi2.universe_size());
  state_set z1 = phi2;
  while (!z1.is_subset_of(z)) {
    ++out.iterations;
    z |= z1;
    z1 = k.pre(a, z);
    z1 &= phi1;
  }
  out.result = std::move(z);
  return out;
}

class evaluator {
public:
  evaluator(const game_structure& s, const check_options& options, check_result& result)
      : s_(s), options_(options), result_(result), kernel_(s, options.backend, &result.stats) {}

  state_set eval(const formula& f) {
    state_set sat(s_.state_count());
    std::uint64_t iterations = 0;
    switch (f.kind()) {
      case formula_kind::constant:
        sat = f.constant_value() ? state_set::full(s_.state_count())
                                 : state_set::empty(s_.state_count());
        break;
      case formula_kind::atom:
        sat = eval_atom(f.atom_name());
        break;
      case formula_kind::negation:
        sat = eval(f.lhs()).complement();
        break;
      case formula_kind::conjunction:
        sat = eval(f.lhs());
        sat &= eval(f.rhs());
        break;
      case formula_kind::disjunction:
        sat = eval(f.lhs());
        sat |= eval(f.rhs());
        break;
      case formula_kind::implication:
        sat = eval(f.lhs()).complement();
        sat |= eval(f.rhs());
        break;
      case formula_kind::next:
        sat = kernel_.pre(resolve(f), eval(f.lhs()));
        break;
      case formula_kind::always: {
        auto fix = fix_always(kernel_, resolve(f), eval(f.lhs()));
        sat = std::move(fix.result);
        iterations = fix.iterations;
        break;
      }
      case formula_kind::eventually: {
        auto fix = fix_eventually(kernel_, resolve(f), eval(f.lhs()));
        sat = std::move(fix.result);
        iterations = fix.iterations;
        break;
      }
      case formula_kind::until: {
        state_set phi1 = eval(f.lhs());
        state_set phi2 = eval(f.rhs());
        auto fix = fix_until(kernel_, resolve(f), phi1, phi2);
        sat = std::move(fix.result);
        iterations = fix.iterations;
        break;
      }
    }
    result_.stats.fixpoint_iterations += iterations;
    result_.stats.max_fixpoint_iterations =
        std::max(result_.stats.max_fixpoint_iterations, iterations);
    if (options_.collect_trace)
      result_.trace.push_back({f, sat, iterations});
    return sat;
  }

private:
  state_set eval_atom(const std::string& name) {
    if (!options_.allow_unknown_atoms || s_.has_proposition(name))
      return s_.states_labeled(name);
    result_.warnings.push_back("proposition '" + name +
                               "' is not declared by the model; treated as false everywhere");
    return state_set::empty(s_.state_count());
  }

  coalition resolve(const formula& f) { return s_.make_coalition(f.coalition_names()); }

  const game_structure& s_;
  const check_options& options_;
  check_result& result_;
  pre_kernel kernel_;
};

}  // namespace detail

/// Satisfaction set of f over s, bottom-up. One set per subformula; the
/// trace (when requested) lists them in evaluation order, root last.
inline check_result check(const game_structure& s, const formula& f,
                          const check_options& options = {}) {
  auto start = std::chrono::steady_clock::now();
  check_result result{f, state_set(s.state_count()), {}, {}, {}};
  detail::evaluator ev(s, options, result);
  result.satisfying = ev.eval(f);
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// Single-operator entry points over already-evaluated operand sets.

inline state_set eval_next(const game_structure& s, const coalition& a, const state_set& phi,
                           pre_backend backend = pre_backend::relational) {
  detail::pre_kernel k(s, backend);
  return k.pre(a, phi);
}

inline state_set eval_always(const game_structure& s, const coalition& a, const state_set& phi,
                             pre_backend backend = pre_backend::relational) {
  detail::pre_kernel k(s, backend);
  return detail::fix_always(k, a, phi).result;
}

inline state_set eval_eventually(const game_structure& s, const coalition& a, const state_set& phi,
                                 pre_backend backend = pre_backend::relational) {
  detail::pre_kernel k(s, backend);
  return detail::fix_eventually(k, a, phi).result;
}

inline state_set eval_until(const game_structure& s, const coalition& a, const state_set& phi1,
                            const state_set& phi2, pre_backend backend = pre_backend::relational) {
  detail::pre_kernel k(s, backend);
  return detail::fix_until(k, a, phi1, phi2).result;
}

}  // namespace atl
