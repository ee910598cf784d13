#include "lpmr/theory.hpp"

#include "lpmr/error.hpp"

namespace lpmr {

std::string RewriteRule::head() const {
  Term h = spine(lhs).first;
  return h.is(TermKind::Const) ? h.name() : std::string();
}

std::size_t RewriteRule::arity() const { return spine(lhs).second.size(); }

std::vector<std::string> RewriteRule::delinearized_vars() const {
  std::vector<std::string> out;
  for (const auto& v : pattern_vars) {
    if (!identification.find(v)) out.push_back(v);
  }
  return out;
}

void Theory::declare(const std::string& name, Term type, std::optional<std::size_t> def) {
  if (symbols_.count(name)) throw Error("constant '" + name + "' is already declared");
  symbols_.emplace(name, Symbol{std::move(type), def});
}

void Theory::add_constant(ConstantDecl decl) {
  declare(decl.name, decl.type, std::nullopt);
  entries_.emplace_back(std::move(decl));
}

void Theory::add_rule(RewriteRule rule) {
  auto shared = std::make_shared<const RewriteRule>(rule);
  rules_[shared->head()].push_back(shared);
  all_rules_.push_back(shared);
  entries_.emplace_back(std::move(rule));
}

void Theory::add_definition(Definition def) {
  declare(def.name, def.type, entries_.size());
  if (!def.opaque) unfold_.emplace(def.name, def.body);
  entries_.emplace_back(std::move(def));
}

void Theory::add(const Entry& entry) {
  std::visit(
      [this](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, ConstantDecl>) {
          add_constant(e);
        } else if constexpr (std::is_same_v<T, RewriteRule>) {
          add_rule(e);
        } else {
          add_definition(e);
        }
      },
      entry);
}

void Theory::append(const Theory& other) {
  for (const auto& e : other.entries()) add(e);
}

bool Theory::contains(std::string_view name) const { return symbols_.find(name) != symbols_.end(); }

const Term* Theory::type_of(std::string_view name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second.type;
}

const Term* Theory::unfolding(std::string_view name) const {
  auto it = unfold_.find(name);
  return it == unfold_.end() ? nullptr : &it->second;
}

const Definition* Theory::definition(std::string_view name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end() || !it->second.definition) return nullptr;
  return &std::get<Definition>(entries_[*it->second.definition]);
}

bool Theory::is_primitive(std::string_view name) const {
  auto it = symbols_.find(name);
  return it != symbols_.end() && !it->second.definition;
}

const std::vector<std::shared_ptr<const RewriteRule>>& Theory::rules_for(std::string_view head) const {
  static const std::vector<std::shared_ptr<const RewriteRule>> none;
  auto it = rules_.find(head);
  return it == rules_.end() ? none : it->second;
}

std::vector<std::string> Theory::primitives() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (const auto* d = std::get_if<ConstantDecl>(&e)) out.push_back(d->name);
  }
  return out;
}

std::vector<const Definition*> Theory::definitions() const {
  std::vector<const Definition*> out;
  for (const auto& e : entries_) {
    if (const auto* d = std::get_if<Definition>(&e)) out.push_back(d);
  }
  return out;
}

}  // namespace lpmr
