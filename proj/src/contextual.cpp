#include "lambdapm/contextual.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace lpm {

namespace {

const char* const kAlphabet[] = {"x", "y", "z"};

class Enumerations {
 public:
  Term term(std::size_t n) {
    std::lock_guard lock(mu_);
    for (std::size_t s = 1; flat_terms_.size() <= n; ++s) {
      if (s > 64) throw std::runtime_error("term enumeration exhausted");
      if (s < terms_done_) continue;
      for (const auto& t : terms_of_size(s)) flat_terms_.push_back(t);
      terms_done_ = s + 1;
    }
    return flat_terms_[n];
  }

  Term context(std::size_t n) {
    std::lock_guard lock(mu_);
    for (std::size_t s = 1; flat_ctx_.size() <= n; ++s) {
      if (s > 64) throw std::runtime_error("context enumeration exhausted");
      if (s < ctx_done_) continue;
      for (const auto& c : contexts_of_size(s, 0)) flat_ctx_.push_back(c);
      ctx_done_ = s + 1;
    }
    return flat_ctx_[n];
  }

 private:
  const std::vector<Term>& terms_of_size(std::size_t s) {
    auto it = terms_.find(s);
    if (it != terms_.end()) return it->second;
    std::vector<Term> out;
    if (s == 1) {
      for (auto v : kAlphabet) out.push_back(var(v));
    } else {
      const auto sub = terms_of_size(s - 1);
      for (auto v : kAlphabet)
        for (const auto& b : sub) out.push_back(lam(v, b));
      for (std::size_t a = 1; a < s; ++a) {
        const auto fs = terms_of_size(a);
        const auto gs = terms_of_size(s - a);
        for (const auto& f : fs)
          for (const auto& g : gs) out.push_back(app(f, g));
      }
    }
    return terms_[s] = std::move(out);
  }

  const std::vector<Term>& contexts_of_size(std::size_t s, std::size_t d) {
    auto key = std::make_pair(s, d % 3);
    auto it = ctx_.find(key);
    if (it != ctx_.end()) return it->second;
    std::vector<Term> out;
    if (s == 1) {
      out.push_back(hole());
    } else {
      for (const auto& c : contexts_of_size(s - 1, d + 1)) out.push_back(lam(kAlphabet[d % 3], c));
      for (std::size_t a = 1; a < s; ++a) {
        const auto cs = contexts_of_size(a, d);
        const auto ts = terms_of_size(s - a);
        for (const auto& c : cs)
          for (const auto& t : ts) out.push_back(app(c, t));
      }
      for (std::size_t a = 1; a < s; ++a) {
        const auto ts = terms_of_size(a);
        const auto cs = contexts_of_size(s - a, d);
        for (const auto& t : ts)
          for (const auto& c : cs) out.push_back(app(t, c));
      }
    }
    return ctx_[key] = std::move(out);
  }

  std::mutex mu_;
  std::map<std::size_t, std::vector<Term>> terms_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> ctx_;
  std::vector<Term> flat_terms_;
  std::vector<Term> flat_ctx_;
  std::size_t terms_done_ = 1;
  std::size_t ctx_done_ = 1;
};

Enumerations& enumerations() {
  static Enumerations e;
  return e;
}

}  // namespace

Term enumerate_context(std::size_t n) { return enumerations().context(n); }

Term enumerate_term(std::size_t n) { return enumerations().term(n); }

DistanceValue p_ctx_bracket(const Term& m, const Term& n, std::size_t prefix, std::size_t fuel) {
  Rational lower = 0;
  Rational undecided = 0;
  for (std::size_t i = 0; i <= prefix; ++i) {
    Term c = enumerate_context(i);
    Solvability sm = solvability(plug(c, m), fuel);
    Solvability sn = solvability(plug(c, n), fuel);
    Rational w = pow2(-static_cast<int>(i));
    if (sm.divergent() || sn.divergent())
      lower += w;
    else if (sm.unknown() || sn.unknown())
      undecided += w;
  }
  return DistanceValue::bracket(lower, lower + undecided + pow2(-static_cast<int>(prefix)));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Unknown:
      return "unknown";
  }
  return {};
}

Verdict in_ctx_ball(const Term& m, const Term& candidate, const Rational& epsilon, std::size_t fuel) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  std::size_t last = 0;
  while (pow2(-static_cast<int>(last + 1)) >= epsilon / 2) ++last;
  Rational certified = 0;
  Rational undecided = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    Term c = enumerate_context(i);
    Solvability sm = solvability(plug(c, m), fuel);
    if (sm.divergent()) continue;
    Solvability sn = solvability(plug(c, candidate), fuel);
    if (sn.solvable()) continue;
    Rational w = pow2(-static_cast<int>(i));
    if (sm.solvable() && sn.divergent())
      certified += w;
    else
      undecided += w;
  }
  if (certified >= epsilon) return Verdict::No;
  if (certified + undecided + pow2(-static_cast<int>(last)) < epsilon) return Verdict::Yes;
  return Verdict::Unknown;
}

GenericityReport genericity_semitest(const Term& unsolvable, const Term& n, std::size_t last, std::size_t fuel) {
  GenericityReport r;
  for (std::size_t i = 0; i <= last; ++i) {
    Term c = enumerate_context(i);
    if (!solvability(plug(c, unsolvable), fuel).solvable()) continue;
    ++r.checked;
    Solvability sn = solvability(plug(c, n), fuel);
    if (sn.divergent()) {
      ++r.violations;
      r.violating_indices.push_back(i);
    } else if (sn.unknown()) {
      ++r.undecided;
    }
  }
  return r;
}

}  // namespace lpm
