#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lpmr/span.hpp"
#include "lpmr/term.hpp"

namespace lpmr {

struct ConstantDecl {
  std::string name;
  Term type;
  Span span;
};

/**
 * A rewrite rule lhs --> rhs. Pattern variables are free variables of both
 * sides. `context` and `identification` are filled in by the type checker:
 * the former types the pattern variables, the latter maps variables of a
 * linearized lhs back to the variable they duplicate.
 */
struct RewriteRule {
  std::vector<std::string> pattern_vars;
  Term lhs;
  Term rhs;
  Context context;
  Substitution identification;
  bool unchecked = false;
  Span span;

  // Head constant of the lhs, and number of arguments it is applied to.
  std::string head() const;
  std::size_t arity() const;
  Term delinearized_lhs() const { return subst(lhs, identification); }
  Term delinearized_rhs() const { return subst(rhs, identification); }
  // Pattern variables that survive de-linearization, in declaration order.
  std::vector<std::string> delinearized_vars() const;
};

// `def` (transparent, unfolds to its body) or `thm` (opaque).
struct Definition {
  std::string name;
  Term type;
  Term body;
  bool opaque = false;
  Span span;
};

using Entry = std::variant<ConstantDecl, RewriteRule, Definition>;

/**
 * Ordered sequence of declarations, rules and definitions.
 *
 * The theory does not check anything beyond name uniqueness; well-formedness
 * is the type checker's job. Copies share rule storage and are cheap enough
 * for the theory sizes this library targets.
 */
class Theory {
 public:
  explicit Theory(std::string name = "") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Each add throws Error on a duplicate name.
  void add_constant(ConstantDecl decl);
  void add_rule(RewriteRule rule);
  void add_definition(Definition def);
  void add(const Entry& entry);
  void append(const Theory& other);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  bool contains(std::string_view name) const;
  const Term* type_of(std::string_view name) const;
  // Body of a transparent definition, or nullptr.
  const Term* unfolding(std::string_view name) const;
  const Definition* definition(std::string_view name) const;
  bool is_primitive(std::string_view name) const;

  const std::vector<std::shared_ptr<const RewriteRule>>& rules_for(std::string_view head) const;
  const std::vector<std::shared_ptr<const RewriteRule>>& rules() const { return all_rules_; }

  // Declared constants (not definitions), in order.
  std::vector<std::string> primitives() const;
  std::vector<const Definition*> definitions() const;

 private:
  struct Symbol {
    Term type;
    std::optional<std::size_t> definition;  // index into entries_
  };

  void declare(const std::string& name, Term type, std::optional<std::size_t> def);

  std::string name_;
  std::vector<Entry> entries_;
  std::map<std::string, Symbol, std::less<>> symbols_;
  std::map<std::string, Term, std::less<>> unfold_;
  std::map<std::string, std::vector<std::shared_ptr<const RewriteRule>>, std::less<>> rules_;
  std::vector<std::shared_ptr<const RewriteRule>> all_rules_;
};

}  // namespace lpmr
