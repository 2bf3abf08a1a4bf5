#include "apg/migrate.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "apg/error.hpp"

namespace apg {

// ---------------------------------------------------------------- terms

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::unit() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  return Term(std::move(n));
}

Term Term::pair(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->children = {std::move(a), std::move(b)};
  return Term(std::move(n));
}

Term Term::unary(Kind k, Term t) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->children = {std::move(t)};
  return Term(std::move(n));
}

Term Term::inl(Term t) { return unary(Kind::Inl, std::move(t)); }
Term Term::inr(Term t) { return unary(Kind::Inr, std::move(t)); }
Term Term::fst(Term t) { return unary(Kind::Fst, std::move(t)); }
Term Term::snd(Term t) { return unary(Kind::Snd, std::move(t)); }
Term Term::phi(Term t) { return unary(Kind::Phi, std::move(t)); }

Term Term::lit(std::string prim, Literal value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lit;
  n->name = std::move(prim);
  n->lit = std::move(value);
  return Term(std::move(n));
}

Term Term::case_of(Term scrutinee, std::string left_binder, Term left_body,
                   std::string right_binder, Term right_body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Case;
  n->name = std::move(left_binder);
  n->name2 = std::move(right_binder);
  n->children = {std::move(scrutinee), std::move(left_body), std::move(right_body)};
  return Term(std::move(n));
}

std::size_t Term::size() const {
  std::size_t s = 1;
  for (const auto& c : node_->children) s += c.size();
  return s;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name || x.name2 != y.name2) return false;
  if (x.kind == Term::Kind::Lit && !literal_equal(x.lit, y.lit)) return false;
  return x.children == y.children;
}

// ---------------------------------------------------------------- parsing

namespace {

bool is_keyword(std::string_view w) {
  return w == "fst" || w == "snd" || w == "inl" || w == "inr" || w == "phi" || w == "case" ||
         w == "of" || w == "true" || w == "false";
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input in term", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void expect_arrow() {
    skip_ws();
    if (text_.substr(pos_, 2) != "->") throw ParseError("expected '->'", pos_);
    pos_ += 2;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\''))
        ++pos_;
    }
    if (start == pos_) throw ParseError("expected identifier", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect_word(std::string_view w) {
    std::size_t at_pos = pos_;
    if (ident() != w) throw ParseError("expected '" + std::string(w) + "'", at_pos);
  }

  std::string binder() {
    std::size_t at_pos = pos_;
    std::string n = ident();
    if (is_keyword(n)) throw ParseError("keyword '" + n + "' cannot be a variable", at_pos);
    return n;
  }

  // A literal starts with a digit, a sign, a quote, or is true/false.
  bool literal_ahead() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    if (c == '"' || std::isdigit(static_cast<unsigned char>(c))) return true;
    if ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
      return true;
    for (std::string_view w : {"true", "false"}) {
      if (text_.substr(pos_, w.size()) == w) {
        std::size_t end = pos_ + w.size();
        if (end == text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
          return true;
      }
    }
    return false;
  }

  Literal read_literal() {
    skip_ws();
    // Borrow the value parser's literal lexer via a placeholder prefix.
    std::size_t start = pos_;
    std::string probe = "P " + std::string(text_.substr(pos_));
    std::size_t p = 0;
    Value v = parse_value_at(probe, p);
    pos_ = start + (p - 2);
    return v.literal();
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of term", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      if (at(')')) {
        ++pos_;
        return Term::unit();
      }
      Term a = term();
      if (at(',')) {
        ++pos_;
        Term b = term();
        expect(')');
        return Term::pair(std::move(a), std::move(b));
      }
      expect(')');
      return a;
    }
    std::size_t word_pos = pos_;
    std::string w = ident();
    if (w == "fst") return Term::fst(term());
    if (w == "snd") return Term::snd(term());
    if (w == "inl") return Term::inl(term());
    if (w == "inr") return Term::inr(term());
    if (w == "phi") return Term::phi(term());
    if (w == "case") {
      Term scrut = term();
      expect_word("of");
      expect('{');
      expect_word("inl");
      std::string lb = binder();
      expect_arrow();
      Term lbody = term();
      expect(';');
      expect_word("inr");
      std::string rb = binder();
      expect_arrow();
      Term rbody = term();
      expect('}');
      return Term::case_of(std::move(scrut), std::move(lb), std::move(lbody), std::move(rb),
                           std::move(rbody));
    }
    if (is_keyword(w)) throw ParseError("unexpected keyword '" + w + "'", word_pos);
    if (literal_ahead()) return Term::lit(std::move(w), read_literal());
    return Term::var(std::move(w));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out += t.name(); return;
    case Term::Kind::Unit: out += "()"; return;
    case Term::Kind::Pair:
      out += '(';
      render(t.child(0), out);
      out += ", ";
      render(t.child(1), out);
      out += ')';
      return;
    case Term::Kind::Inl: out += "inl "; render(t.child(0), out); return;
    case Term::Kind::Inr: out += "inr "; render(t.child(0), out); return;
    case Term::Kind::Fst: out += "fst "; render(t.child(0), out); return;
    case Term::Kind::Snd: out += "snd "; render(t.child(0), out); return;
    case Term::Kind::Phi: out += "phi "; render(t.child(0), out); return;
    case Term::Kind::Lit:
      out += t.prim_type() + " " + render_literal(t.literal());
      return;
    case Term::Kind::Case:
      out += "case ";
      render(t.child(0), out);
      out += " of { inl " + t.left_binder() + " -> ";
      render(t.child(1), out);
      out += " ; inr " + t.right_binder() + " -> ";
      render(t.child(2), out);
      out += " }";
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

std::string render_term(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

// ---------------------------------------------------------------- typing

namespace {

Error type_error(const Term& t, const std::string& msg) {
  return Error(ErrorKind::Type, msg + " in `" + render_term(t) + "`");
}

// Types with unification variables. Injections and dead case branches leave
// parts of a type open; those are solved by first-order unification.
struct MType;
using MT = std::shared_ptr<const MType>;

struct MType {
  enum class Kind { Meta, Known, Sum, Prod };
  Kind kind = Kind::Known;
  std::size_t meta = 0;
  Type known = Type::one();  // a closed leaf: 0, 1, Prim or Lbl
  MT l, r;
};

MT known(Type t) {
  auto m = std::make_shared<MType>();
  m->kind = MType::Kind::Known;
  m->known = std::move(t);
  return m;
}

MT node(MType::Kind k, MT l, MT r) {
  auto m = std::make_shared<MType>();
  m->kind = k;
  m->l = std::move(l);
  m->r = std::move(r);
  return m;
}

MT lift(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Sum: return node(MType::Kind::Sum, lift(t.left()), lift(t.right()));
    case Type::Kind::Prod: return node(MType::Kind::Prod, lift(t.left()), lift(t.right()));
    default: return known(t);
  }
}

using MEnv = std::map<std::string, MT>;

class Inference {
 public:
  explicit Inference(const Schema& over) : over_(over) {}

  MT fresh() {
    auto m = std::make_shared<MType>();
    m->kind = MType::Kind::Meta;
    m->meta = solution_.size();
    solution_.emplace_back();
    return m;
  }

  MT resolve(MT t) const {
    while (t->kind == MType::Kind::Meta && solution_[t->meta]) t = solution_[t->meta];
    return t;
  }

  // Fully solved type, or nullopt if a variable is left open.
  std::optional<Type> ground(const MT& t) const {
    MT r = resolve(t);
    switch (r->kind) {
      case MType::Kind::Meta: return std::nullopt;
      case MType::Kind::Known: return r->known;
      case MType::Kind::Sum:
      case MType::Kind::Prod: {
        auto a = ground(r->l), b = ground(r->r);
        if (!a || !b) return std::nullopt;
        return r->kind == MType::Kind::Sum ? Type::sum(*a, *b) : Type::prod(*a, *b);
      }
    }
    return std::nullopt;
  }

  std::string show(const MT& t) const {
    MT r = resolve(t);
    switch (r->kind) {
      case MType::Kind::Meta: return "?" + std::to_string(r->meta);
      case MType::Kind::Known: return render_type(r->known);
      case MType::Kind::Sum: return "(" + show(r->l) + " + " + show(r->r) + ")";
      case MType::Kind::Prod: return "(" + show(r->l) + " * " + show(r->r) + ")";
    }
    return "?";
  }

  void unify(const MT& a, const MT& b, const Term& at, bool a_expected) {
    if (!unifies(a, b)) {
      const MT& want = a_expected ? a : b;
      const MT& got = a_expected ? b : a;
      throw type_error(at, "expected " + show(want) + ", found " + show(got));
    }
  }

  MT infer(const Term& t, const MEnv& env) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = env.find(t.name());
        if (it == env.end()) throw type_error(t, "unbound variable " + t.name());
        return it->second;
      }
      case Term::Kind::Unit: return known(Type::one());
      case Term::Kind::Pair: return node(MType::Kind::Prod, infer(t.child(0), env), infer(t.child(1), env));
      case Term::Kind::Inl: return node(MType::Kind::Sum, infer(t.child(0), env), fresh());
      case Term::Kind::Inr: return node(MType::Kind::Sum, fresh(), infer(t.child(0), env));
      case Term::Kind::Fst:
      case Term::Kind::Snd: {
        MT a = resolve(infer(t.child(0), env));
        if (a->kind == MType::Kind::Meta) {
          MT p = node(MType::Kind::Prod, fresh(), fresh());
          unifies(a, p);
          a = p;
        }
        if (a->kind != MType::Kind::Prod) throw type_error(t, "projection from non-product type " + show(a));
        return t.kind() == Term::Kind::Fst ? a->l : a->r;
      }
      case Term::Kind::Phi: {
        MT a = resolve(infer(t.child(0), env));
        if (a->kind == MType::Kind::Meta) throw type_error(t, "cannot determine the label of phi's argument");
        if (a->kind != MType::Kind::Known || a->known.kind() != Type::Kind::Lbl)
          throw type_error(t, "phi needs a label-typed argument, found " + show(a));
        if (!over_.has_label(a->known.label())) throw type_error(t, "unknown label " + a->known.label().str());
        return lift(over_.type_of(a->known.label()));
      }
      case Term::Kind::Lit: {
        if (!over_.registry().contains(t.prim_type()))
          throw type_error(t, "unknown primitive type " + t.prim_type());
        if (!literal_in_domain(t.literal(), over_.registry().domain(t.prim_type())))
          throw type_error(t, "literal outside the domain of " + t.prim_type());
        return known(Type::prim(t.prim_type()));
      }
      case Term::Kind::Case: {
        auto [le, re] = branch_envs(t, env);
        MT a = infer(t.child(1), le);
        check(t.child(2), a, re);
        return a;
      }
    }
    throw type_error(t, "unhandled term");
  }

  // Pushes the expected type into introduction forms so that mismatches are
  // reported at the innermost offending subterm.
  void check(const Term& t, const MT& expected, const MEnv& env) {
    MT e = resolve(expected);
    switch (t.kind()) {
      case Term::Kind::Pair:
        if (e->kind == MType::Kind::Prod) {
          check(t.child(0), e->l, env);
          check(t.child(1), e->r, env);
          return;
        }
        if (e->kind != MType::Kind::Meta) throw type_error(t, "pair where " + show(e) + " is expected");
        break;
      case Term::Kind::Inl:
      case Term::Kind::Inr:
        if (e->kind == MType::Kind::Sum) {
          check(t.child(0), t.kind() == Term::Kind::Inl ? e->l : e->r, env);
          return;
        }
        if (e->kind != MType::Kind::Meta) throw type_error(t, "injection where " + show(e) + " is expected");
        break;
      case Term::Kind::Case: {
        auto [le, re] = branch_envs(t, env);
        check(t.child(1), e, le);
        check(t.child(2), e, re);
        return;
      }
      default: break;
    }
    unify(e, infer(t, env), t, true);
  }

 private:
  std::pair<MEnv, MEnv> branch_envs(const Term& t, const MEnv& env) {
    MT s = resolve(infer(t.child(0), env));
    if (s->kind == MType::Kind::Meta) {
      MT sum = node(MType::Kind::Sum, fresh(), fresh());
      unifies(s, sum);
      s = sum;
    }
    if (s->kind != MType::Kind::Sum) throw type_error(t, "case analysis of non-sum type " + show(s));
    MEnv le = env, re = env;
    le.insert_or_assign(t.left_binder(), s->l);
    re.insert_or_assign(t.right_binder(), s->r);
    return {le, re};
  }

  bool occurs(std::size_t meta, const MT& t) const {
    MT r = resolve(t);
    if (r->kind == MType::Kind::Meta) return r->meta == meta;
    if (r->kind == MType::Kind::Known) return false;
    return occurs(meta, r->l) || occurs(meta, r->r);
  }

  bool unifies(const MT& a0, const MT& b0) {
    MT a = resolve(a0), b = resolve(b0);
    if (a == b) return true;
    if (a->kind == MType::Kind::Meta) {
      if (b->kind == MType::Kind::Meta && b->meta == a->meta) return true;
      if (occurs(a->meta, b)) return false;
      solution_[a->meta] = b;
      return true;
    }
    if (b->kind == MType::Kind::Meta) return unifies(b, a);
    if (a->kind != b->kind) return false;
    if (a->kind == MType::Kind::Known) return a->known == b->known;
    return unifies(a->l, b->l) && unifies(a->r, b->r);
  }

  const Schema& over_;
  std::vector<MT> solution_;
};

MEnv lift_env(const TermEnv& env) {
  MEnv out;
  for (const auto& [n, t] : env) out.emplace(n, lift(t));
  return out;
}

}  // namespace

Type synthesize_term(const Term& t, const Schema& over, const TermEnv& env) {
  Inference inf(over);
  MT a = inf.infer(t, lift_env(env));
  auto g = inf.ground(a);
  if (!g) throw type_error(t, "type is not determined: " + inf.show(a) + "; an expected type is needed");
  return *g;
}

void check_term(const Term& t, const Type& expected, const Schema& over, const TermEnv& env) {
  Inference inf(over);
  inf.check(t, lift(expected), lift_env(env));
}

ValidationReport typecheck_mapping(const SchemaMapping& m) {
  ValidationReport report;
  for (const auto& [l, _] : m.source.labels()) {
    if (!m.on_labels.contains(l))
      report.findings.push_back({l.str(), "", "no target type for this label"});
    if (!m.on_terms.contains(l))
      report.findings.push_back({l.str(), "", "no term for this label"});
  }
  for (const auto& [l, _] : m.on_labels)
    if (!m.source.has_label(l))
      report.findings.push_back({l.str(), "", "mapped label is not in the source schema"});
  for (const auto& [l, _] : m.on_terms)
    if (!m.source.has_label(l))
      report.findings.push_back({l.str(), "", "term given for a label not in the source schema"});
  if (!report.ok()) return report;

  for (const auto& [l, t] : m.on_labels) {
    std::set<Label> used;
    t.collect_labels(used);
    for (const auto& u : used)
      if (!m.target.has_label(u))
        report.findings.push_back({l.str(), "", "target type mentions unknown label " + u.str()});
  }
  if (!report.ok()) return report;

  for (const auto& [l, src_type] : m.source.labels()) {
    try {
      Type expected = transport_type(m.on_labels, src_type);
      check_term(m.on_terms.at(l), expected, m.target, {{kFreeVar, m.on_labels.at(l)}});
    } catch (const Error& e) {
      report.findings.push_back({l.str(), "", e.what()});
    }
  }
  return report;
}

// ---------------------------------------------------------------- rewriting

namespace {

void free_vars(const Term& t, std::set<std::string>& out, std::set<std::string>& bound) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.contains(t.name())) out.insert(t.name());
      return;
    case Term::Kind::Case: {
      free_vars(t.child(0), out, bound);
      for (int side = 1; side <= 2; ++side) {
        const std::string& b = side == 1 ? t.left_binder() : t.right_binder();
        bool added = bound.insert(b).second;
        free_vars(t.child(side), out, bound);
        if (added) bound.erase(b);
      }
      return;
    }
    default:
      for (std::size_t i = 0; i < t.arity(); ++i) free_vars(t.child(i), out, bound);
  }
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out, bound;
  free_vars(t, out, bound);
  return out;
}

void all_names(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) out.insert(t.name());
  if (t.kind() == Term::Kind::Case) {
    out.insert(t.left_binder());
    out.insert(t.right_binder());
  }
  for (std::size_t i = 0; i < t.arity(); ++i) all_names(t.child(i), out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (std::size_t i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.contains(cand)) return cand;
  }
}

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case Term::Kind::Pair: return Term::pair(std::move(kids[0]), std::move(kids[1]));
    case Term::Kind::Inl: return Term::inl(std::move(kids[0]));
    case Term::Kind::Inr: return Term::inr(std::move(kids[0]));
    case Term::Kind::Fst: return Term::fst(std::move(kids[0]));
    case Term::Kind::Snd: return Term::snd(std::move(kids[0]));
    case Term::Kind::Phi: return Term::phi(std::move(kids[0]));
    case Term::Kind::Case:
      return Term::case_of(std::move(kids[0]), t.left_binder(), std::move(kids[1]), t.right_binder(),
                           std::move(kids[2]));
    default: return t;
  }
}

Term subst_impl(const Term& t, const std::string& name, const Term& value,
                const std::set<std::string>& value_fv) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == name ? value : t;
    case Term::Kind::Unit:
    case Term::Kind::Lit:
      return t;
    case Term::Kind::Case: {
      Term scrut = subst_impl(t.child(0), name, value, value_fv);
      std::string binders[2] = {t.left_binder(), t.right_binder()};
      Term bodies[2] = {t.child(1), t.child(2)};
      for (int i = 0; i < 2; ++i) {
        if (binders[i] == name) continue;  // shadowed
        if (value_fv.contains(binders[i])) {
          std::set<std::string> avoid = value_fv;
          all_names(bodies[i], avoid);
          avoid.insert(name);
          std::string renamed = fresh_name(binders[i], avoid);
          bodies[i] = substitute(bodies[i], binders[i], Term::var(renamed));
          binders[i] = renamed;
        }
        bodies[i] = subst_impl(bodies[i], name, value, value_fv);
      }
      return Term::case_of(std::move(scrut), binders[0], std::move(bodies[0]), binders[1],
                           std::move(bodies[1]));
    }
    default: {
      std::vector<Term> kids;
      for (std::size_t i = 0; i < t.arity(); ++i)
        kids.push_back(subst_impl(t.child(i), name, value, value_fv));
      return rebuild(t, std::move(kids));
    }
  }
}

class Normalizer {
 public:
  Term run(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var:
      case Term::Kind::Unit:
      case Term::Kind::Lit:
        return t;
      case Term::Kind::Fst:
      case Term::Kind::Snd: {
        Term a = run(t.child(0));
        if (a.kind() == Term::Kind::Pair) {
          ++steps;
          return a.child(t.kind() == Term::Kind::Fst ? 0 : 1);
        }
        return rebuild(t, {std::move(a)});
      }
      case Term::Kind::Case: {
        Term s = run(t.child(0));
        if (s.kind() == Term::Kind::Inl) {
          ++steps;
          return run(substitute(t.child(1), t.left_binder(), s.child(0)));
        }
        if (s.kind() == Term::Kind::Inr) {
          ++steps;
          return run(substitute(t.child(2), t.right_binder(), s.child(0)));
        }
        return Term::case_of(std::move(s), t.left_binder(), run(t.child(1)), t.right_binder(),
                             run(t.child(2)));
      }
      default: {
        std::vector<Term> kids;
        for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(run(t.child(i)));
        return rebuild(t, std::move(kids));
      }
    }
  }

  std::size_t steps = 0;
};

}  // namespace

Term substitute(const Term& t, const std::string& name, const Term& value) {
  return subst_impl(t, name, value, free_vars(value));
}

Normalized normalize_term(const Term& t) {
  Normalizer n;
  Term out = n.run(t);
  return Normalized{std::move(out), n.steps};
}

bool is_normal(const Term& t) {
  if (t.kind() == Term::Kind::Fst || t.kind() == Term::Kind::Snd)
    if (t.child(0).kind() == Term::Kind::Pair) return false;
  if (t.kind() == Term::Kind::Case) {
    auto k = t.child(0).kind();
    if (k == Term::Kind::Inl || k == Term::Kind::Inr) return false;
  }
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (!is_normal(t.child(i))) return false;
  return true;
}

// ---------------------------------------------------------------- evaluation

std::vector<Value> enumerate_values(const Type& t, const Graph& g) {
  std::vector<Value> out;
  switch (t.kind()) {
    case Type::Kind::Zero:
      break;
    case Type::Kind::One:
      out.push_back(Value::unit());
      break;
    case Type::Kind::Lbl:
      for (const auto& e : g.elements_with_label(t.label())) out.push_back(Value::ref(e));
      break;
    case Type::Kind::Sum:
      for (auto& v : enumerate_values(t.left(), g)) out.push_back(Value::inl(std::move(v)));
      for (auto& v : enumerate_values(t.right(), g)) out.push_back(Value::inr(std::move(v)));
      break;
    case Type::Kind::Prod: {
      auto ls = enumerate_values(t.left(), g);
      auto rs = enumerate_values(t.right(), g);
      for (const auto& a : ls)
        for (const auto& b : rs) out.push_back(Value::pair(a, b));
      break;
    }
    case Type::Kind::Prim:
      throw Error(ErrorKind::Precondition,
                  "cannot enumerate the values of primitive type " + t.prim_name());
  }
  std::sort(out.begin(), out.end(), ValueLess{});
  return out;
}

namespace {

using ValueEnv = std::map<std::string, Value>;

Value eval(const Term& t, const ValueEnv& env, const Graph& g) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) throw Error(ErrorKind::Type, "unbound variable " + t.name());
      return it->second;
    }
    case Term::Kind::Unit: return Value::unit();
    case Term::Kind::Lit: return Value::prim(t.prim_type(), t.literal());
    case Term::Kind::Pair: return Value::pair(eval(t.child(0), env, g), eval(t.child(1), env, g));
    case Term::Kind::Inl: return Value::inl(eval(t.child(0), env, g));
    case Term::Kind::Inr: return Value::inr(eval(t.child(0), env, g));
    case Term::Kind::Fst:
    case Term::Kind::Snd: {
      Value v = eval(t.child(0), env, g);
      if (v.kind() != Value::Kind::Pair)
        throw Error(ErrorKind::Type, "projection of non-pair " + render_value(v));
      return t.kind() == Term::Kind::Fst ? v.first() : v.second();
    }
    case Term::Kind::Phi: {
      Value v = eval(t.child(0), env, g);
      if (v.kind() != Value::Kind::Ref)
        throw Error(ErrorKind::Type, "phi of non-reference " + render_value(v));
      return g.element(v.element()).value;
    }
    case Term::Kind::Case: {
      Value s = eval(t.child(0), env, g);
      ValueEnv inner = env;
      if (s.kind() == Value::Kind::Inl) {
        inner.insert_or_assign(t.left_binder(), s.first());
        return eval(t.child(1), inner, g);
      }
      if (s.kind() == Value::Kind::Inr) {
        inner.insert_or_assign(t.right_binder(), s.first());
        return eval(t.child(2), inner, g);
      }
      throw Error(ErrorKind::Type, "case analysis of non-injection " + render_value(s));
    }
  }
  throw Error(ErrorKind::Type, "unhandled term");
}

bool enumerable(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Prim: return false;
    case Type::Kind::Sum:
    case Type::Kind::Prod: return enumerable(t.left()) && enumerable(t.right());
    default: return true;
  }
}

}  // namespace

Value eval_term(const Term& t, const Value& binding, const Graph& g) {
  return eval(t, {{kFreeVar, binding}}, g);
}

namespace {

class Reindexer {
 public:
  Reindexer(const std::map<Label, std::set<std::string>>& witnesses) : witnesses_(witnesses) {}

  // `raw` inhabits the source type with labels replaced by their mapped
  // types; at each Lbl position the sub-value is a witness of that label.
  Value run(const Value& raw, const Type& at) {
    switch (at.kind()) {
      case Type::Kind::Lbl: {
        auto it = witnesses_.find(at.label());
        if (it == witnesses_.end() || !it->second.contains(render_value(raw)))
          throw Error(ErrorKind::Precondition,
                      "migrated value refers to " + at.label().str() + " witness " +
                          render_value(raw) + " which is not an element of the output, at path " +
                          (path_.empty() ? std::string("<root>") : render_path(path_)));
        return Value::ref(ElementId::enc(at.label(), raw));
      }
      case Type::Kind::Sum:
        if (raw.kind() == Value::Kind::Inl) return step("inl", raw.first(), at.left(), true);
        if (raw.kind() == Value::Kind::Inr) return step("inr", raw.first(), at.right(), false);
        break;
      case Type::Kind::Prod:
        if (raw.kind() == Value::Kind::Pair) {
          path_.push_back("fst");
          Value a = run(raw.first(), at.left());
          path_.back() = "snd";
          Value b = run(raw.second(), at.right());
          path_.pop_back();
          return Value::pair(std::move(a), std::move(b));
        }
        break;
      default:
        return raw;
    }
    throw Error(ErrorKind::Type, "migrated value " + render_value(raw) + " does not have the shape of " +
                                     render_type(at));
  }

 private:
  Value step(const char* name, const Value& inner, const Type& at, bool left) {
    path_.push_back(name);
    Value v = run(inner, at);
    path_.pop_back();
    return left ? Value::inl(std::move(v)) : Value::inr(std::move(v));
  }

  const std::map<Label, std::set<std::string>>& witnesses_;
  ValuePath path_;
};

}  // namespace

Graph delta_migrate(const SchemaMapping& m, const Graph& g) {
  ValidationReport tc = typecheck_mapping(m);
  if (!tc.ok()) throw Error(ErrorKind::Precondition, "mapping does not typecheck:\n" + tc.to_string());
  for (const auto& [l, t] : m.on_labels)
    if (!enumerable(t))
      throw Error(ErrorKind::Precondition,
                  "label " + l.str() + " maps to " + render_type(t) +
                      ", outside the enumerable fragment (1, +, *, labels)");
  if (!(g.schema().labels() == m.target.labels()))
    throw Error(ErrorKind::Precondition, "input graph is not on the mapping's target schema");
  ValidationReport vr = validate_graph(g);
  if (!vr.ok()) throw Error(ErrorKind::Precondition, "input graph is invalid:\n" + vr.to_string());

  std::map<Label, std::vector<Value>> enumerated;
  std::map<Label, std::set<std::string>> witnesses;
  for (const auto& [l, t] : m.on_labels) {
    auto vs = enumerate_values(t, g);
    for (const auto& v : vs) witnesses[l].insert(render_value(v));
    enumerated.emplace(l, std::move(vs));
  }

  Reindexer reindex(witnesses);
  std::map<ElementId, Element> elements;
  for (const auto& [l, src_type] : m.source.labels()) {
    const Term& term = m.on_terms.at(l);
    for (const auto& w : enumerated.at(l)) {
      Value raw = eval_term(term, w, g);
      elements.emplace(ElementId::enc(l, w), Element{l, reindex.run(raw, src_type)});
    }
  }
  return Graph(m.source, std::move(elements));
}

}  // namespace apg
