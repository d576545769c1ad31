#include "awb/formula.hpp"

#include <algorithm>
#include <cctype>

namespace awb {

Prop Prop::atom(std::string name) {
  return Prop(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}

Prop Prop::negation(Prop child) {
  return Prop(std::make_shared<const Node>(
      Node{Kind::Not, {}, std::make_shared<const Prop>(std::move(child)), nullptr}));
}

Prop Prop::conjunction(Prop lhs, Prop rhs) {
  return Prop(std::make_shared<const Node>(Node{Kind::And, {},
                                                std::make_shared<const Prop>(std::move(lhs)),
                                                std::make_shared<const Prop>(std::move(rhs))}));
}

Prop Prop::disjunction(Prop lhs, Prop rhs) {
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

Prop Prop::implication(Prop lhs, Prop rhs) {
  return negation(conjunction(std::move(lhs), negation(std::move(rhs))));
}

Prop Prop::equivalence(Prop lhs, Prop rhs) {
  return conjunction(implication(lhs, rhs), implication(rhs, lhs));
}

std::size_t Prop::depth() const {
  switch (kind()) {
    case Kind::Atom: return 0;
    case Kind::Not: return 1 + child().depth();
    case Kind::And: return 1 + std::max(lhs().depth(), rhs().depth());
  }
  return 0;
}

std::size_t Prop::size() const {
  switch (kind()) {
    case Kind::Atom: return 1;
    case Kind::Not: return 1 + child().size();
    case Kind::And: return 1 + lhs().size() + rhs().size();
  }
  return 0;
}

bool operator==(const Prop& a, const Prop& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Prop::Kind::Atom: return a.name() == b.name();
    case Prop::Kind::Not: return a.child() == b.child();
    case Prop::Kind::And: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

// `&` is left-associative, so a conjunction needs parentheses as a right
// operand or under `~`, never as a left operand.
void print_into(const Prop& p, bool wrap_and, std::string& out) {
  switch (p.kind()) {
    case Prop::Kind::Atom:
      out += p.name();
      break;
    case Prop::Kind::Not:
      out += '~';
      print_into(p.child(), true, out);
      break;
    case Prop::Kind::And:
      if (wrap_and) out += '(';
      print_into(p.lhs(), false, out);
      out += " & ";
      print_into(p.rhs(), true, out);
      if (wrap_and) out += ')';
      break;
  }
}

void collect_atoms(const Prop& p, AtomSet& out) {
  switch (p.kind()) {
    case Prop::Kind::Atom: out.insert(p.name()); break;
    case Prop::Kind::Not: collect_atoms(p.child(), out); break;
    case Prop::Kind::And:
      collect_atoms(p.lhs(), out);
      collect_atoms(p.rhs(), out);
      break;
  }
}

std::string print_modal(std::string_view op, const std::string& agent, const Prop& body) {
  std::string out;
  out += op;
  out += '[';
  out += agent;
  out += "] ";
  print_into(body, true, out);
  return out;
}

}  // namespace

std::string print(const Prop& p) {
  std::string out;
  print_into(p, false, out);
  return out;
}

std::string print(const AilFormula& f) {
  switch (f.kind) {
    case AilFormula::Kind::Prop: return print(f.body);
    case AilFormula::Kind::Aware: return print_modal("A", f.agent, f.body);
    case AilFormula::Kind::BoxIBox: {
      std::string prefix = "X[" + f.agent + "] I[" + f.agent + "] X";
      return print_modal(prefix, f.agent, f.body);
    }
  }
  return {};
}

std::string print(const HmsFormula& f) {
  switch (f.kind) {
    case HmsFormula::Kind::Prop: return print(f.body);
    case HmsFormula::Kind::Aware: return print_modal("A", f.agent, f.body);
    case HmsFormula::Kind::Implicit: return print_modal("I", f.agent, f.body);
  }
  return {};
}

AtomSet atoms_of(const Prop& p) {
  AtomSet out;
  collect_atoms(p, out);
  return out;
}

AtomSet atoms_of(const AilFormula& f) { return atoms_of(f.body); }
AtomSet atoms_of(const HmsFormula& f) { return atoms_of(f.body); }

HmsFormula translate(const AilFormula& f) {
  switch (f.kind) {
    case AilFormula::Kind::Prop: return HmsFormula::prop(f.body);
    case AilFormula::Kind::Aware: return HmsFormula::aware(f.agent, f.body);
    case AilFormula::Kind::BoxIBox: return HmsFormula::implicit(f.agent, f.body);
  }
  return HmsFormula::prop(f.body);
}

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

bool is_valid_agent_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

}  // namespace awb
