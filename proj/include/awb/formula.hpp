#pragma once

// Formulas of the propositional base language and of the two flat modal
// fragments: the awareness fragment (A_i, [~]_i I_i [~]_i) and the HMS
// fragment (A_i, I_i).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace awb {

using AtomSet = std::set<std::string>;

// Propositional formula over ~ and & only. Disjunction and the arrows are
// surface syntax and are desugared by the parser.
class Prop {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And };

  static Prop atom(std::string name);
  static Prop negation(Prop child);
  static Prop conjunction(Prop lhs, Prop rhs);

  // Derived connectives, expressed in ~ and &.
  static Prop disjunction(Prop lhs, Prop rhs);
  static Prop implication(Prop lhs, Prop rhs);
  static Prop equivalence(Prop lhs, Prop rhs);

  Kind kind() const { return node_->kind; }
  // Only meaningful for Kind::Atom.
  const std::string& name() const { return node_->name; }
  // Only meaningful for Kind::Not.
  const Prop& child() const { return *node_->lhs; }
  // Only meaningful for Kind::And.
  const Prop& lhs() const { return *node_->lhs; }
  const Prop& rhs() const { return *node_->rhs; }

  std::size_t depth() const;
  std::size_t size() const;

  friend bool operator==(const Prop& a, const Prop& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Prop> lhs;
    std::shared_ptr<const Prop> rhs;
  };
  explicit Prop(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct AilFormula {
  enum class Kind : std::uint8_t { Prop, Aware, BoxIBox };

  Kind kind;
  std::string agent;  // empty for Kind::Prop
  Prop body;

  static AilFormula prop(Prop body) { return {Kind::Prop, {}, std::move(body)}; }
  static AilFormula aware(std::string agent, Prop body) {
    return {Kind::Aware, std::move(agent), std::move(body)};
  }
  // The composed operator [~]_i I_i [~]_i.
  static AilFormula box_i_box(std::string agent, Prop body) {
    return {Kind::BoxIBox, std::move(agent), std::move(body)};
  }

  friend bool operator==(const AilFormula&, const AilFormula&) = default;
};

struct HmsFormula {
  enum class Kind : std::uint8_t { Prop, Aware, Implicit };

  Kind kind;
  std::string agent;
  Prop body;

  static HmsFormula prop(Prop body) { return {Kind::Prop, {}, std::move(body)}; }
  static HmsFormula aware(std::string agent, Prop body) {
    return {Kind::Aware, std::move(agent), std::move(body)};
  }
  static HmsFormula implicit(std::string agent, Prop body) {
    return {Kind::Implicit, std::move(agent), std::move(body)};
  }

  friend bool operator==(const HmsFormula&, const HmsFormula&) = default;
};

// Thrown by the parsers. `offset` is a byte offset into the input; line and
// column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::size_t line, std::size_t column);

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

Prop parse_prop(std::string_view text);
AilFormula parse_ail(std::string_view text);
HmsFormula parse_hms(std::string_view text);

// Canonical surface syntax; parse_*(print(f)) == f.
std::string print(const Prop& p);
std::string print(const AilFormula& f);
std::string print(const HmsFormula& f);

AtomSet atoms_of(const Prop& p);
AtomSet atoms_of(const AilFormula& f);
AtomSet atoms_of(const HmsFormula& f);

// Replaces the composed operator by I_i; everything else is kept.
HmsFormula translate(const AilFormula& f);

bool is_valid_atom_name(std::string_view name);
bool is_valid_agent_name(std::string_view name);

}  // namespace awb
