#include "lpmr/printer.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "lpmr/parser.hpp"

namespace lpmr {
namespace {

bool uses_index(const Term& t, std::uint32_t i) {
  if (t.loose() <= i) return false;
  switch (t.kind()) {
    case TermKind::Bound:
      return t.index() == i;
    case TermKind::Lam:
    case TermKind::Pi:
      return (t.domain() && uses_index(t.domain(), i)) || uses_index(t.body(), i + 1);
    case TermKind::App:
      return uses_index(t.fun(), i) || uses_index(t.arg(), i);
    default:
      return false;
  }
}

// Bound indices (relative to the binder of t) reachable from t's body that
// point outside it; collected as positions in the printer's name stack.
void outer_refs(const Term& t, std::uint32_t depth, std::size_t stack_size,
                std::set<std::size_t>& out) {
  if (t.loose() <= depth) return;
  switch (t.kind()) {
    case TermKind::Bound:
      out.insert(stack_size - 1 - (t.index() - depth));
      break;
    case TermKind::Lam:
    case TermKind::Pi:
      if (t.domain()) outer_refs(t.domain(), depth, stack_size, out);
      outer_refs(t.body(), depth + 1, stack_size, out);
      break;
    case TermKind::App:
      outer_refs(t.fun(), depth, stack_size, out);
      outer_refs(t.arg(), depth, stack_size, out);
      break;
    default:
      break;
  }
}

std::string sanitize(const std::string& hint) {
  std::string s;
  for (char c : base_name(hint)) s += (c == '%') ? '_' : c;
  if (!is_identifier(s) || s == "_") s = "x";
  return s;
}

class Printer {
 public:
  std::string out;

  // prec 0: anything; 1: application level; 2: atom.
  void print(const Term& t, int prec) {
    switch (t.kind()) {
      case TermKind::Type:
        out += "Type";
        return;
      case TermKind::Kind:
        out += "Kind";
        return;
      case TermKind::Const:
      case TermKind::Free:
        out += t.name();
        return;
      case TermKind::Bound:
        out += names_[names_.size() - 1 - t.index()];
        return;
      case TermKind::App:
        if (prec > 1) out += "(";
        print(t.fun(), 1);
        out += " ";
        print(t.arg(), 2);
        if (prec > 1) out += ")";
        return;
      case TermKind::Lam:
      case TermKind::Pi:
        if (prec > 0) out += "(";
        binder(t);
        if (prec > 0) out += ")";
        return;
    }
  }

 private:
  void binder(const Term& t) {
    bool is_pi = t.is(TermKind::Pi);
    if (is_pi && !uses_index(t.body(), 0)) {
      print(t.domain(), 1);
      out += " -> ";
      names_.push_back("_");
      print(t.body(), 0);
      names_.pop_back();
      return;
    }
    std::string x = choose(t);
    out += x;
    if (t.domain()) {
      out += " : ";
      print(t.domain(), 1);
    }
    out += is_pi ? " -> " : " => ";
    names_.push_back(x);
    print(t.body(), 0);
    names_.pop_back();
  }

  std::string choose(const Term& t) {
    std::set<std::string> avoid = constants_of(t.body());
    for (const auto& v : free_vars(t.body())) avoid.insert(v);
    std::set<std::size_t> refs;
    outer_refs(t.body(), 1, names_.size(), refs);
    for (std::size_t i : refs) avoid.insert(names_[i]);
    std::string base = sanitize(t.name());
    std::string x = base;
    for (int k = 1; avoid.count(x); ++k) x = base + std::to_string(k);
    return x;
  }

  std::vector<std::string> names_;
};

}  // namespace

std::string pretty(const Term& t) {
  if (!t) return "<null>";
  Printer p;
  p.print(t, 0);
  return p.out;
}

}  // namespace lpmr
