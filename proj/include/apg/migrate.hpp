#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "apg/graph.hpp"

namespace apg {

// Terms with one free variable, used to write the morphisms of a schema
// mapping:
//
//   x | () | (t, t) | inl t | inr t | fst t | snd t | phi t | P literal
//     | case t of { inl a -> t ; inr b -> t }
//
// phi t dereferences an element reference to the element's value.
class Term {
 public:
  enum class Kind { Var, Unit, Pair, Inl, Inr, Fst, Snd, Case, Phi, Lit };

  static Term var(std::string name);
  static Term unit();
  static Term pair(Term a, Term b);
  static Term inl(Term t);
  static Term inr(Term t);
  static Term fst(Term t);
  static Term snd(Term t);
  static Term phi(Term t);
  static Term lit(std::string prim, Literal value);
  static Term case_of(Term scrutinee, std::string left_binder, Term left_body,
                      std::string right_binder, Term right_body);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // Var
  // Pair: 0,1. Inl/Inr/Fst/Snd/Phi: 0. Case: 0 scrutinee, 1 left body, 2 right body.
  const Term& child(std::size_t i) const { return node_->children.at(i); }
  std::size_t arity() const { return node_->children.size(); }
  const std::string& left_binder() const { return node_->name; }
  const std::string& right_binder() const { return node_->name2; }
  const std::string& prim_type() const { return node_->name; }
  const Literal& literal() const { return node_->lit; }

  // Number of nodes.
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind = Kind::Unit;
    std::string name;
    std::string name2;
    Literal lit;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term unary(Kind k, Term t);

  std::shared_ptr<const Node> node_;
};

Term parse_term(std::string_view text);
std::string render_term(const Term& t);

// The conventional name of the one free variable.
inline constexpr const char* kFreeVar = "x";

using TermEnv = std::map<std::string, Type>;

// Typing over a schema (phi t : T(l) when t : Lbl l). Expected types are
// pushed into pairs, injections and case branches; what an injection leaves
// open (the other summand) is solved by unification. synthesize_term fails
// when the type is not fully determined, e.g. for a bare `inl ()`.
// Both throw Error(Type) with a description of the offending subterm.
Type synthesize_term(const Term& t, const Schema& over, const TermEnv& env);
void check_term(const Term& t, const Type& expected, const Schema& over, const TermEnv& env);

struct SchemaMapping {
  Schema source;
  Schema target;
  std::map<Label, Type> on_labels;  // source label -> type over target
  std::map<Label, Term> on_terms;   // source label -> term, x : on_labels[l]
};

// For each source label l, on_terms[l] must check against the source type of
// l with labels replaced through on_labels, with x : on_labels[l].
ValidationReport typecheck_mapping(const SchemaMapping& m);

// Capture-avoiding t[name := value].
Term substitute(const Term& t, const std::string& name, const Term& value);

struct Normalized {
  Term term;
  std::size_t steps = 0;
};

// Exhaustive rewriting with fst (a,b) -> a, snd (a,b) -> b and the two case
// β-rules.
Normalized normalize_term(const Term& t);

// True if no fst/snd-of-pair or case-of-injection redex occurs.
bool is_normal(const Term& t);

// All values of a type built from 1, +, *, Lbl over the graph, sorted by
// canonical rendering. 0 has none; primitive types are not enumerable.
std::vector<Value> enumerate_values(const Type& t, const Graph& g);

// Call-by-value evaluation with x bound to `binding`.
Value eval_term(const Term& t, const Value& binding, const Graph& g);

// Migrates a graph on the mapping's target schema to one on its source
// schema. Element ids are E:<label>=<witness>, one per value of
// on_labels[l] over the input.
Graph delta_migrate(const SchemaMapping& m, const Graph& g);

}  // namespace apg
