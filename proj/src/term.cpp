#include "lambdapm/term.hpp"

#include <algorithm>
#include <unordered_map>

#include "lexer.hpp"

namespace lpm {

using detail::Tok;
using detail::Token;

Term var(std::string name) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::Var, std::move(name), nullptr, nullptr});
}

Term lam(std::string binder, Term body) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::Abs, std::move(binder), std::move(body), nullptr});
}

Term app(Term fun, Term arg) {
  return std::make_shared<const TermNode>(TermNode{TermNode::Kind::App, {}, std::move(fun), std::move(arg)});
}

Term app(Term fun, const std::vector<Term>& args) {
  for (const auto& a : args) fun = app(fun, a);
  return fun;
}

Term bottom_term() {
  static const Term b = std::make_shared<const TermNode>(TermNode{TermNode::Kind::Bottom, "_|_", nullptr, nullptr});
  return b;
}

Term hole() {
  static const Term h = std::make_shared<const TermNode>(TermNode{TermNode::Kind::Hole, "[-]", nullptr, nullptr});
  return h;
}

namespace {

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), opts_(opts) {}

  Term parse_all() {
    Term t = term();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
    ++i_;
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::LParen:
      case Tok::Bottom:
      case Tok::Hole:
      case Tok::Lambda:
        return true;
      default:
        return false;
    }
  }

  Term term() {
    if (peek().kind == Tok::Lambda) return abstraction();
    Term t = atom();
    while (atom_start()) {
      if (peek().kind == Tok::Lambda) return app(t, abstraction());
      t = app(t, atom());
    }
    return t;
  }

  Term abstraction() {
    expect(Tok::Lambda, "lambda");
    std::vector<std::string> binders;
    while (peek().kind == Tok::Ident) binders.push_back(next().text);
    if (binders.empty()) throw ParseError("expected binder", peek().pos);
    expect(Tok::Dot, "'.'");
    Term body = term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = lam(*it, body);
    return body;
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        ++i_;
        return var(t.text);
      case Tok::LParen: {
        ++i_;
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Bottom:
        if (!opts_.allow_bottom) throw ParseError("'_|_' is only allowed in partial terms", t.pos);
        ++i_;
        return bottom_term();
      case Tok::Hole:
        if (!opts_.allow_hole) throw ParseError("'[-]' is only allowed in contexts", t.pos);
        ++i_;
        return hole();
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  ParseOptions opts_;
};

void print_into(const Term& t, std::string& out);

void print_fun(const Term& t, std::string& out) {
  if (t->kind == TermNode::Kind::Abs) {
    out += '(';
    print_into(t, out);
    out += ')';
  } else {
    print_into(t, out);
  }
}

void print_arg(const Term& t, std::string& out) {
  if (t->kind == TermNode::Kind::Abs || t->kind == TermNode::Kind::App) {
    out += '(';
    print_into(t, out);
    out += ')';
  } else {
    print_into(t, out);
  }
}

void print_into(const Term& t, std::string& out) {
  switch (t->kind) {
    case TermNode::Kind::Var:
    case TermNode::Kind::Bottom:
    case TermNode::Kind::Hole:
      out += t->name;
      break;
    case TermNode::Kind::Abs:
      out += '\\';
      out += t->name;
      out += '.';
      print_into(t->left, out);
      break;
    case TermNode::Kind::App:
      print_fun(t->left, out);
      out += ' ';
      print_arg(t->right, out);
      break;
  }
}

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermNode::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
      break;
    case TermNode::Kind::Abs:
      bound.push_back(t->name);
      collect_free(t->left, bound, out);
      bound.pop_back();
      break;
    case TermNode::Kind::App:
      collect_free(t->left, bound, out);
      collect_free(t->right, bound, out);
      break;
    default:
      break;
  }
}

bool occurs_free(const std::string& x, const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Var:
      return t->name == x;
    case TermNode::Kind::Abs:
      return t->name != x && occurs_free(x, t->left);
    case TermNode::Kind::App:
      return occurs_free(x, t->left) || occurs_free(x, t->right);
    default:
      return false;
  }
}

void key_into(const Term& t, std::vector<std::string>& stack, std::string& out) {
  switch (t->kind) {
    case TermNode::Kind::Var: {
      for (std::size_t i = stack.size(); i-- > 0;) {
        if (stack[i] == t->name) {
          out += '#';
          out += std::to_string(stack.size() - 1 - i);
          out += ' ';
          return;
        }
      }
      out += '$';
      out += t->name;
      out += ' ';
      break;
    }
    case TermNode::Kind::Abs:
      out += '\\';
      stack.push_back(t->name);
      key_into(t->left, stack, out);
      stack.pop_back();
      break;
    case TermNode::Kind::App:
      out += '(';
      key_into(t->left, stack, out);
      key_into(t->right, stack, out);
      out += ')';
      break;
    case TermNode::Kind::Bottom:
      out += "_ ";
      break;
    case TermNode::Kind::Hole:
      out += "? ";
      break;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base + "'";
  while (avoid.count(n)) n += "'";
  return n;
}

Term subst(const Term& t, const std::string& x, const Term& s, const std::set<std::string>& fvs) {
  switch (t->kind) {
    case TermNode::Kind::Var:
      return t->name == x ? s : t;
    case TermNode::Kind::Abs: {
      if (t->name == x) return t;
      if (fvs.count(t->name)) {
        if (!occurs_free(x, t->left)) return t;
        std::set<std::string> avoid = fvs;
        std::vector<std::string> bound;
        collect_free(t->left, bound, avoid);
        avoid.insert(x);
        std::string fresh = fresh_name(t->name, avoid);
        Term renamed = subst(t->left, t->name, var(fresh), {fresh});
        return lam(fresh, subst(renamed, x, s, fvs));
      }
      Term body = subst(t->left, x, s, fvs);
      return body == t->left ? t : lam(t->name, body);
    }
    case TermNode::Kind::App: {
      Term l = subst(t->left, x, s, fvs);
      Term r = subst(t->right, x, s, fvs);
      return (l == t->left && r == t->right) ? t : app(l, r);
    }
    default:
      return t;
  }
}

struct Spine {
  std::vector<std::string> binders;
  Term head;
  std::vector<Term> args;
};

Spine decompose(Term t) {
  Spine sp;
  while (t->kind == TermNode::Kind::Abs) {
    sp.binders.push_back(t->name);
    t = t->left;
  }
  while (t->kind == TermNode::Kind::App) {
    sp.args.push_back(t->right);
    t = t->left;
  }
  std::reverse(sp.args.begin(), sp.args.end());
  sp.head = t;
  return sp;
}

Term rebuild(const std::vector<std::string>& binders, Term body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = lam(*it, body);
  return body;
}

}  // namespace

Term parse(std::string_view text, ParseOptions opts) {
  Parser p(detail::tokenize(text), opts);
  Term t = p.parse_all();
  if (opts.strict) {
    auto fv = free_vars(t);
    if (!fv.empty()) throw ParseError("free variable '" + *fv.begin() + "' in strict mode", 0);
  }
  return t;
}

std::string print(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

std::size_t size(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Abs:
      return 1 + size(t->left);
    case TermNode::Kind::App:
      return size(t->left) + size(t->right);
    default:
      return 1;
  }
}

bool contains_hole(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Hole:
      return true;
    case TermNode::Kind::Abs:
      return contains_hole(t->left);
    case TermNode::Kind::App:
      return contains_hole(t->left) || contains_hole(t->right);
    default:
      return false;
  }
}

std::string canonical_key(const Term& t) {
  std::string out;
  std::vector<std::string> stack;
  key_into(t, stack, out);
  return out;
}

bool alpha_equal(const Term& a, const Term& b) { return canonical_key(a) == canonical_key(b); }

Term substitute(const Term& t, const std::string& x, const Term& s) { return subst(t, x, s, free_vars(s)); }

Term plug(const Term& context, const Term& t) {
  switch (context->kind) {
    case TermNode::Kind::Hole:
      return t;
    case TermNode::Kind::Abs:
      return lam(context->name, plug(context->left, t));
    case TermNode::Kind::App:
      return app(plug(context->left, t), plug(context->right, t));
    default:
      return context;
  }
}

std::optional<HeadForm> head_form(const Term& t) {
  Spine sp = decompose(t);
  if (sp.head->kind == TermNode::Kind::Abs) return std::nullopt;
  return HeadForm{std::move(sp.binders), sp.head->name, std::move(sp.args)};
}

VarRef resolve(const std::vector<std::string>& scope, const std::string& name) {
  for (std::size_t i = scope.size(); i-- > 0;)
    if (scope[i] == name) return VarRef{static_cast<int>(scope.size() - 1 - i), name};
  return VarRef{-1, name};
}

Term from_head_form(const HeadForm& h) { return rebuild(h.binders, app(var(h.head), h.args)); }

std::variant<Term, HeadForm> head_reduce_step(const Term& t) {
  Spine sp = decompose(t);
  if (sp.head->kind != TermNode::Kind::Abs) return HeadForm{std::move(sp.binders), sp.head->name, std::move(sp.args)};
  Term body = substitute(sp.head->left, sp.head->name, sp.args[0]);
  std::vector<Term> rest(sp.args.begin() + 1, sp.args.end());
  return rebuild(sp.binders, app(body, rest));
}

std::string to_string(Solvability::Status s) {
  switch (s) {
    case Solvability::Status::Solvable:
      return "solvable";
    case Solvability::Status::Divergent:
      return "divergent";
    case Solvability::Status::Unknown:
      return "unknown";
  }
  return {};
}

Solvability solvability(const Term& t, std::size_t fuel) {
  Solvability out;
  std::unordered_map<std::string, std::size_t> seen;
  Term cur = t;
  for (std::size_t step = 0;; ++step) {
    std::string key = canonical_key(cur);
    auto [it, fresh] = seen.emplace(std::move(key), step);
    if (!fresh) {
      out.status = Solvability::Status::Divergent;
      out.steps = step;
      out.cycle_start = it->second;
      out.cycle_length = step - it->second;
      out.witness = cur;
      return out;
    }
    auto r = head_reduce_step(cur);
    if (auto* h = std::get_if<HeadForm>(&r)) {
      out.status = Solvability::Status::Solvable;
      out.steps = step;
      out.hnf = std::move(*h);
      return out;
    }
    if (step >= fuel) {
      out.status = Solvability::Status::Unknown;
      out.steps = fuel;
      return out;
    }
    cur = std::get<Term>(std::move(r));
  }
}

namespace {

std::optional<Term> normalize_with(Term t, std::size_t& fuel) {
  for (;;) {
    auto r = head_reduce_step(t);
    if (auto* next = std::get_if<Term>(&r)) {
      if (fuel == 0) return std::nullopt;
      --fuel;
      t = *next;
      continue;
    }
    HeadForm h = std::get<HeadForm>(std::move(r));
    for (auto& a : h.args) {
      auto na = normalize_with(a, fuel);
      if (!na) return std::nullopt;
      a = *na;
    }
    return from_head_form(h);
  }
}

}  // namespace

std::optional<Term> normalize(const Term& t, std::size_t fuel) { return normalize_with(t, fuel); }

}  // namespace lpm
