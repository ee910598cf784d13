#include "lpmr/term.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

#include "lpmr/error.hpp"

namespace lpmr {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

Term make(Node n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  switch (n.kind) {
    case TermKind::Const:
    case TermKind::Free:
      h = mix(h, std::hash<std::string>{}(n.name));
      n.has_free = n.kind == TermKind::Free;
      break;
    case TermKind::Bound:
      h = mix(h, n.index);
      n.loose = n.index + 1;
      break;
    case TermKind::Lam:
    case TermKind::Pi: {
      std::uint32_t dl = n.left ? n.left.loose() : 0;
      std::uint32_t bl = n.right.loose();
      n.loose = std::max(dl, bl > 0 ? bl - 1 : 0);
      n.has_free = (n.left && n.left.has_free()) || n.right.has_free();
      h = mix(h, n.left ? n.left.hash() : 0);
      h = mix(h, n.right.hash());
      break;
    }
    case TermKind::App:
      n.loose = std::max(n.left.loose(), n.right.loose());
      n.has_free = n.left.has_free() || n.right.has_free();
      h = mix(mix(h, n.left.hash()), n.right.hash());
      break;
    case TermKind::Type:
    case TermKind::Kind:
      break;
  }
  n.hash = h;
  return Term::from_node(std::make_shared<const Node>(std::move(n)));
}

const Term& type_singleton() {
  static const Term t = make(Node{TermKind::Type, {}, 0, {}, {}, 0, 0, false});
  return t;
}

const Term& kind_singleton() {
  static const Term t = make(Node{TermKind::Kind, {}, 0, {}, {}, 0, 0, false});
  return t;
}

// Shift loose indices >= cutoff by `by`.
Term shift(const Term& t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      return Term::bound(t.index() + by);
    case TermKind::Lam:
      return Term::lam(t.name(), t.domain() ? shift(t.domain(), by, cutoff) : Term(),
                       shift(t.body(), by, cutoff + 1));
    case TermKind::Pi:
      return Term::pi(t.name(), shift(t.domain(), by, cutoff), shift(t.body(), by, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fun(), by, cutoff), shift(t.arg(), by, cutoff));
    default:
      return t;
  }
}

Term instantiate_at(const Term& t, const Term& value, std::uint32_t depth) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(value, depth, 0);
      return Term::bound(t.index() - 1);  // index > depth
    case TermKind::Lam:
      return Term::lam(t.name(), t.domain() ? instantiate_at(t.domain(), value, depth) : Term(),
                       instantiate_at(t.body(), value, depth + 1));
    case TermKind::Pi:
      return Term::pi(t.name(), instantiate_at(t.domain(), value, depth),
                      instantiate_at(t.body(), value, depth + 1));
    case TermKind::App:
      return Term::app(instantiate_at(t.fun(), value, depth), instantiate_at(t.arg(), value, depth));
    default:
      return t;
  }
}

Term abstract_at(const Term& t, std::string_view name, std::uint32_t depth) {
  if (!t.has_free() && t.loose() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Free:
      return t.name() == name ? Term::bound(depth) : t;
    case TermKind::Bound:
      return t.index() >= depth ? Term::bound(t.index() + 1) : t;
    case TermKind::Lam:
      return Term::lam(t.name(), t.domain() ? abstract_at(t.domain(), name, depth) : Term(),
                       abstract_at(t.body(), name, depth + 1));
    case TermKind::Pi:
      return Term::pi(t.name(), abstract_at(t.domain(), name, depth),
                      abstract_at(t.body(), name, depth + 1));
    case TermKind::App:
      return Term::app(abstract_at(t.fun(), name, depth), abstract_at(t.arg(), name, depth));
    default:
      return t;
  }
}

Term subst_at(const Term& t, const Substitution& theta, std::uint32_t depth) {
  if (!t.has_free()) return t;
  switch (t.kind()) {
    case TermKind::Free: {
      const Term* v = theta.find(t.name());
      return v ? shift(*v, depth, 0) : t;
    }
    case TermKind::Lam:
      return Term::lam(t.name(), t.domain() ? subst_at(t.domain(), theta, depth) : Term(),
                       subst_at(t.body(), theta, depth + 1));
    case TermKind::Pi:
      return Term::pi(t.name(), subst_at(t.domain(), theta, depth),
                      subst_at(t.body(), theta, depth + 1));
    case TermKind::App:
      return Term::app(subst_at(t.fun(), theta, depth), subst_at(t.arg(), theta, depth));
    default:
      return t;
  }
}

void collect_free(const Term& t, std::set<std::string>& out) {
  if (!t.has_free()) return;
  switch (t.kind()) {
    case TermKind::Free:
      out.insert(t.name());
      break;
    case TermKind::Lam:
    case TermKind::Pi:
      if (t.domain()) collect_free(t.domain(), out);
      collect_free(t.body(), out);
      break;
    case TermKind::App:
      collect_free(t.fun(), out);
      collect_free(t.arg(), out);
      break;
    default:
      break;
  }
}

void collect_consts(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Const:
      out.insert(t.name());
      break;
    case TermKind::Lam:
    case TermKind::Pi:
      if (t.domain()) collect_consts(t.domain(), out);
      collect_consts(t.body(), out);
      break;
    case TermKind::App:
      collect_consts(t.fun(), out);
      collect_consts(t.arg(), out);
      break;
    default:
      break;
  }
}

std::atomic<std::uint64_t> fresh_counter{0};

}  // namespace

Term Term::from_node(std::shared_ptr<const Node> node) { return Term(std::move(node)); }

Term Term::constant(std::string name) {
  return make(Node{TermKind::Const, std::move(name), 0, {}, {}, 0, 0, false});
}
Term Term::free(std::string name) {
  return make(Node{TermKind::Free, std::move(name), 0, {}, {}, 0, 0, false});
}
Term Term::bound(std::uint32_t index) {
  return make(Node{TermKind::Bound, {}, index, {}, {}, 0, 0, false});
}
Term Term::lam(std::string hint, Term domain, Term body) {
  return make(Node{TermKind::Lam, std::move(hint), 0, std::move(domain), std::move(body), 0, 0, false});
}
Term Term::pi(std::string hint, Term domain, Term body) {
  return make(Node{TermKind::Pi, std::move(hint), 0, std::move(domain), std::move(body), 0, 0, false});
}
Term Term::app(Term fun, Term arg) {
  return make(Node{TermKind::App, {}, 0, std::move(fun), std::move(arg), 0, 0, false});
}
Term Term::app(Term fun, const std::vector<Term>& args) {
  for (const Term& a : args) fun = app(std::move(fun), a);
  return fun;
}
Term Term::type_sort() { return type_singleton(); }
Term Term::kind_sort() { return kind_singleton(); }

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::uint32_t Term::index() const { return node_->index; }
const Term& Term::domain() const { return node_->left; }
const Term& Term::body() const { return node_->right; }
const Term& Term::fun() const { return node_->left; }
const Term& Term::arg() const { return node_->right; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }
std::uint32_t Term::loose() const { return node_->loose; }
bool Term::has_free() const { return node_->has_free; }

bool alpha_eq(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  if (!t || !u) return false;
  if (t.hash() != u.hash() || t.kind() != u.kind()) return false;
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Free:
      return t.name() == u.name();
    case TermKind::Bound:
      return t.index() == u.index();
    case TermKind::Lam:
    case TermKind::Pi:
      if (static_cast<bool>(t.domain()) != static_cast<bool>(u.domain())) return false;
      if (t.domain() && !alpha_eq(t.domain(), u.domain())) return false;
      return alpha_eq(t.body(), u.body());
    case TermKind::App:
      return alpha_eq(t.fun(), u.fun()) && alpha_eq(t.arg(), u.arg());
    case TermKind::Type:
    case TermKind::Kind:
      return true;
  }
  return false;
}

Substitution::Substitution(std::initializer_list<std::pair<std::string, Term>> init) {
  for (const auto& [k, v] : init) {
    if (!bind(k, v)) throw Error("duplicate substitution entry '" + k + "'");
  }
}

bool Substitution::bind(std::string name, Term value) {
  if (find(name)) return false;
  entries_.emplace_back(std::move(name), std::move(value));
  return true;
}

const Term* Substitution::find(std::string_view name) const {
  for (const auto& [k, v] : entries_) {
    if (k == name) return &v;
  }
  return nullptr;
}

const Term* Context::lookup(std::string_view name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->name == name) return &it->type;
  }
  return nullptr;
}

Term subst(const Term& t, const Substitution& theta) {
  if (theta.empty()) return t;
  return subst_at(t, theta, 0);
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  if (t) collect_free(t, out);
  return out;
}

std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  if (t) collect_consts(t, out);
  return out;
}

Term instantiate(const Term& body, const Term& value) { return instantiate_at(body, value, 0); }

Term abstract(const Term& t, std::string_view name) { return abstract_at(t, name, 0); }

Term lam_over(const std::string& var, std::string hint, Term domain, const Term& body) {
  return Term::lam(std::move(hint), std::move(domain), abstract(body, var));
}

Term pi_over(const std::string& var, std::string hint, Term domain, const Term& body) {
  return Term::pi(std::move(hint), std::move(domain), abstract(body, var));
}

Term arrow(Term domain, Term codomain) {
  return Term::pi("_", std::move(domain), shift(codomain, 1, 0));
}

std::pair<Term, std::vector<Term>> spine(const Term& t) {
  std::vector<Term> args;
  Term head = t;
  while (head.is(TermKind::App)) {
    args.push_back(head.arg());
    head = head.fun();
  }
  std::reverse(args.begin(), args.end());
  return {head, std::move(args)};
}

std::string fresh_name(std::string_view hint) {
  std::string base = base_name(hint);
  if (base.empty() || base == "_") base = "x";
  return base + "#" + std::to_string(++fresh_counter);
}

std::string base_name(std::string_view name) {
  auto pos = name.find('#');
  return std::string(pos == std::string_view::npos ? name : name.substr(0, pos));
}

bool is_kind(const Term& t) {
  Term cur = t;
  while (cur.is(TermKind::Pi)) cur = cur.body();
  return cur.is(TermKind::Type);
}

std::size_t term_size(const Term& t) {
  if (!t) return 0;
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::Pi:
      return 1 + term_size(t.domain()) + term_size(t.body());
    case TermKind::App:
      return 1 + term_size(t.fun()) + term_size(t.arg());
    default:
      return 1;
  }
}

std::size_t term_depth(const Term& t) {
  if (!t) return 0;
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::Pi:
      return 1 + std::max(term_depth(t.domain()), term_depth(t.body()));
    case TermKind::App:
      return 1 + std::max(term_depth(t.fun()), term_depth(t.arg()));
    default:
      return 1;
  }
}

}  // namespace lpmr
