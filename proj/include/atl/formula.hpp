#pragma once

#include <cassert>
#include <memory>
#include <string>
#include <vector>

namespace atl {

enum class formula_kind {
  constant,
  atom,
  negation,
  conjunction,
  disjunction,
  implication,
  next,        // <<A>>@ f
  always,      // <<A>># f
  eventually,  // <<A>>~ f
  until,       // <<A>> f U g
};

/// Immutable formula tree. Copies share nodes; coalition members stay
/// unresolved names until evaluation against a concrete structure.
class formula {
public:
  static formula constant(bool value) {
    auto n = std::make_shared<node>();
    n->kind = formula_kind::constant;
    n->value = value;
    return formula(std::move(n));
  }

  static formula atom(std::string name) {
    auto n = std::make_shared<node>();
    n->kind = formula_kind::atom;
    n->name = std::move(name);
    return formula(std::move(n));
  }

  static formula negation(formula f) {
    auto n = std::make_shared<node>();
    n->kind = formula_kind::negation;
    n->lhs = f.node_;
    return formula(std::move(n));
  }

  static formula conjunction(formula a, formula b) { return binary(formula_kind::conjunction, a, b); }
  static formula disjunction(formula a, formula b) { return binary(formula_kind::disjunction, a, b); }
  static formula implication(formula a, formula b) { return binary(formula_kind::implication, a, b); }

  static formula next(std::vector<std::string> coalition, formula f) {
    return temporal(formula_kind::next, std::move(coalition), std::move(f));
  }

  static formula always(std::vector<std::string> coalition, formula f) {
    return temporal(formula_kind::always, std::move(coalition), std::move(f));
  }

  static formula eventually(std::vector<std::string> coalition, formula f) {
    return temporal(formula_kind::eventually, std::move(coalition), std::move(f));
  }

  static formula until(std::vector<std::string> coalition, formula lhs, formula rhs) {
    return temporal(formula_kind::until, std::move(coalition), lhs, rhs);
  }

  formula_kind kind() const { return node_->kind; }

  bool constant_value() const {
    assert(kind() == formula_kind::constant);
    return node_->value;
  }

  const std::string& atom_name() const {
    assert(kind() == formula_kind::atom);
    return node_->name;
  }

  /// Player names of the path quantifier; valid for temporal kinds only.
  const std::vector<std::string>& coalition_names() const {
    assert(is_temporal());
    return node_->coalition;
  }

  bool is_temporal() const {
    switch (kind()) {
      case formula_kind::next:
      case formula_kind::always:
      case formula_kind::eventually:
      case formula_kind::until:
        return true;
      default:
        return false;
    }
  }

  std::size_t child_count() const {
    switch (kind()) {
      case formula_kind::constant:
      case formula_kind::atom:
        return 0;
      case formula_kind::negation:
      case formula_kind::next:
      case formula_kind::always:
      case formula_kind::eventually:
        return 1;
      default:
        return 2;
    }
  }

  formula lhs() const {
    assert(child_count() >= 1);
    return formula(node_->lhs);
  }

  formula rhs() const {
    assert(child_count() == 2);
    return formula(node_->rhs);
  }

  std::size_t depth() const {
    switch (child_count()) {
      case 0:
        return 1;
      case 1:
        return 1 + lhs().depth();
      default:
        return 1 + std::max(lhs().depth(), rhs().depth());
    }
  }

  bool operator==(const formula& other) const {
    if (node_ == other.node_)
      return true;
    if (node_->kind != other.node_->kind)
      return false;
    switch (node_->kind) {
      case formula_kind::constant:
        return node_->value == other.node_->value;
      case formula_kind::atom:
        return node_->name == other.node_->name;
      default:
        break;
    }
    if (is_temporal() && node_->coalition != other.node_->coalition)
      return false;
    if (child_count() >= 1 && !(lhs() == other.lhs()))
      return false;
    if (child_count() == 2 && !(rhs() == other.rhs()))
      return false;
    return true;
  }

  bool operator!=(const formula& other) const { return !(*this == other); }

private:
  struct node {
    formula_kind kind;
    bool value = false;
    std::string name;
    std::vector<std::string> coalition;
    std::shared_ptr<const node> lhs;
    std::shared_ptr<const node> rhs;
  };

  explicit formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}

  static formula binary(formula_kind kind, formula a, formula b) {
    auto n = std::make_shared<node>();
    n->kind = kind;
    n->lhs = a.node_;
    n->rhs = b.node_;
    return formula(std::move(n));
  }

  static formula temporal(formula_kind kind, std::vector<std::string> coalition, formula a) {
    auto n = std::make_shared<node>();
    n->kind = kind;
    n->coalition = std::move(coalition);
    n->lhs = a.node_;
    return formula(std::move(n));
  }

  static formula temporal(formula_kind kind, std::vector<std::string> coalition, formula a,
                          formula b) {
    auto n = std::make_shared<node>();
    n->kind = kind;
    n->coalition = std::move(coalition);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return formula(std::move(n));
  }

  std::shared_ptr<const node> node_;
};

inline std::string format_coalition(const std::vector<std::string>& members) {
  std::string s = "<<";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i)
      s += ",";
    s += members[i];
  }
  return s + ">>";
}

/// Canonical rendering; parse(format(f)) == f. Every operand is
/// parenthesized, so precedence never has to be reconstructed.
inline std::string format(const formula& f) {
  switch (f.kind()) {
    case formula_kind::constant:
      return f.constant_value() ? "true" : "false";
    case formula_kind::atom:
      return f.atom_name();
    case formula_kind::negation:
      return "not (" + format(f.lhs()) + ")";
    case formula_kind::conjunction:
      return "(" + format(f.lhs()) + ") and (" + format(f.rhs()) + ")";
    case formula_kind::disjunction:
      return "(" + format(f.lhs()) + ") or (" + format(f.rhs()) + ")";
    case formula_kind::implication:
      return "(" + format(f.lhs()) + ") => (" + format(f.rhs()) + ")";
    case formula_kind::next:
      return format_coalition(f.coalition_names()) + "@ (" + format(f.lhs()) + ")";
    case formula_kind::always:
      return format_coalition(f.coalition_names()) + "# (" + format(f.lhs()) + ")";
    case formula_kind::eventually:
      return format_coalition(f.coalition_names()) + "~ (" + format(f.lhs()) + ")";
    case formula_kind::until:
      return format_coalition(f.coalition_names()) + " (" + format(f.lhs()) + ") U (" +
             format(f.rhs()) + ")";
  }
  return {};
}

}  // namespace atl
