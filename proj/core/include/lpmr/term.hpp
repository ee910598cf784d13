#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lpmr {

enum class TermKind : std::uint8_t { Const, Free, Bound, Lam, Pi, App, Type, Kind };

struct Node;

/**
 * Immutable, shared term of the lambda-Pi calculus modulo rewriting.
 *
 * One representation serves objects, types and kinds. Binders are locally
 * nameless: variables bound inside a term are de Bruijn indices (`Bound`),
 * variables of the ambient context are names (`Free`). Binders keep a name
 * hint that only matters for printing, so structural equality of two terms
 * is alpha-equivalence.
 *
 * A default-constructed Term is null; it is used for the missing domain of
 * an unannotated abstraction `x => t`.
 */
class Term {
 public:
  Term() = default;

  static Term constant(std::string name);
  static Term free(std::string name);
  static Term bound(std::uint32_t index);
  static Term lam(std::string hint, Term domain, Term body);
  static Term pi(std::string hint, Term domain, Term body);
  static Term app(Term fun, Term arg);
  static Term app(Term fun, const std::vector<Term>& args);
  static Term type_sort();
  static Term kind_sort();

  explicit operator bool() const { return node_ != nullptr; }
  TermKind kind() const;

  bool is(TermKind k) const { return node_ && kind() == k; }
  bool is_sort() const { return is(TermKind::Type) || is(TermKind::Kind); }
  bool is_binder() const { return is(TermKind::Lam) || is(TermKind::Pi); }

  // Constant or free-variable name, or binder hint.
  const std::string& name() const;
  std::uint32_t index() const;
  const Term& domain() const;  // Lam / Pi; null for unannotated Lam
  const Term& body() const;    // Lam / Pi
  const Term& fun() const;     // App
  const Term& arg() const;     // App

  std::size_t hash() const;
  // One more than the largest loose de Bruijn index; 0 when locally closed.
  std::uint32_t loose() const;
  bool has_free() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

  static Term from_node(std::shared_ptr<const Node> node);

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  TermKind kind;
  std::string name;
  std::uint32_t index = 0;
  Term left;   // domain or function
  Term right;  // body or argument
  std::size_t hash = 0;
  std::uint32_t loose = 0;
  bool has_free = false;
};

// Structural equality on the nameless skeleton, which is alpha-equivalence.
bool alpha_eq(const Term& t, const Term& u);

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct TermAlphaEq {
  bool operator()(const Term& a, const Term& b) const { return alpha_eq(a, b); }
};

/// Simultaneous capture-avoiding substitution of free variables by terms.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<std::string, Term>> init);

  // Returns false (and leaves the map unchanged) if `name` is already bound.
  bool bind(std::string name, Term value);
  const Term* find(std::string_view name) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<std::pair<std::string, Term>> entries_;
};

struct Binding {
  std::string name;
  Term type;
};

/// Ordered typing context x1 : A1, ..., xn : An. Lookups search from the right.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<Binding> init) : entries_(init) {}

  void push(std::string name, Term type) { entries_.push_back({std::move(name), std::move(type)}); }
  void pop() { entries_.pop_back(); }
  const Term* lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Binding& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<Binding> entries_;
};

Term subst(const Term& t, const Substitution& theta);
std::set<std::string> free_vars(const Term& t);
// Every constant name occurring in t.
std::set<std::string> constants_of(const Term& t);

// Replace the loose index 0 of a binder body by `value` (beta / opening).
Term instantiate(const Term& body, const Term& value);
// Turn the free variable `name` into the loose index 0 (closing).
Term abstract(const Term& t, std::string_view name);

// Build binders over a body in which the bound variable is still `var`.
Term lam_over(const std::string& var, std::string hint, Term domain, const Term& body);
Term pi_over(const std::string& var, std::string hint, Term domain, const Term& body);
Term arrow(Term domain, Term codomain);

// Spine decomposition: t = head a1 ... an.
std::pair<Term, std::vector<Term>> spine(const Term& t);

// Fresh free-variable name derived from a hint. Fresh names contain '#',
// which the surface syntax never produces, so they cannot collide with
// user identifiers.
std::string fresh_name(std::string_view hint);
// The printable part of a (possibly generated) name.
std::string base_name(std::string_view name);

// Syntactic kind test: Type, or a product whose codomain is a kind.
bool is_kind(const Term& t);

std::size_t term_size(const Term& t);
std::size_t term_depth(const Term& t);

}  // namespace lpmr
