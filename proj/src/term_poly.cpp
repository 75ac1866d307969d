#include "dioph/term_poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace dioph {

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto e : m) {
      h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using Accumulator = std::unordered_map<Monomial, BigInt, MonomialHash>;

void check_budget(std::size_t n, std::size_t budget) {
  if (n > budget) {
    throw BudgetExceeded("polynomial exceeds the term budget of " + std::to_string(budget));
  }
}

}  // namespace

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::uint64_t total_degree(const Monomial& m) {
  std::uint64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& name : b) {
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

TermPoly::TermPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = i + 1; j < vars_.size(); ++j) {
      if (vars_[i] == vars_[j]) throw DomainError("duplicate variable '" + vars_[i] + "'");
    }
  }
}

TermPoly TermPoly::constant(const BigInt& c, std::vector<std::string> variables) {
  TermPoly p(std::move(variables));
  p.add_term(Monomial(p.vars_.size(), 0), c);
  return p;
}

TermPoly TermPoly::variable(const std::string& name) {
  TermPoly p({name});
  p.add_term(Monomial{1}, 1);
  return p;
}

std::uint64_t TermPoly::degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

BigInt TermPoly::height() const {
  BigInt h = 0;
  for (const auto& [m, c] : terms_) {
    if (abs(c) > h) h = abs(c);
  }
  return h;
}

BigInt TermPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt TermPoly::constant_term() const { return coefficient(Monomial(vars_.size(), 0)); }

std::optional<std::size_t> TermPoly::find(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t TermPoly::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw DomainError("unknown variable '" + name + "'");
  return *i;
}

void TermPoly::add_term(const Monomial& m, const BigInt& c) {
  if (m.size() != vars_.size()) throw DomainError("monomial arity does not match variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TermPoly TermPoly::over(const std::vector<std::string>& variables) const {
  if (variables == vars_) return *this;
  TermPoly out(variables);
  std::vector<std::size_t> where(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto j = out.find(vars_[i]);
    where[i] = j ? *j : variables.size();
  }
  for (const auto& [m, c] : terms_) {
    Monomial nm(variables.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (where[i] == variables.size()) {
        throw DomainError("variable '" + vars_[i] + "' occurs but is not in the target list");
      }
      nm[where[i]] = m[i];
    }
    out.terms_.emplace(std::move(nm), c);
  }
  return out;
}

std::vector<std::string> TermPoly::occurring_variables() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) used[i] = used[i] || m[i] > 0;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) out.push_back(vars_[i]);
  }
  return out;
}

TermPoly TermPoly::compacted() const { return over(occurring_variables()); }

TermPoly TermPoly::operator-() const {
  TermPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

TermPoly TermPoly::add(const TermPoly& other, std::size_t budget) const {
  const auto vars = merge_variables(vars_, other.vars_);
  TermPoly out = over(vars);
  const TermPoly rhs = other.over(vars);
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
  check_budget(out.size(), budget);
  return out;
}

TermPoly TermPoly::sub(const TermPoly& other, std::size_t budget) const {
  return add(-other, budget);
}

TermPoly TermPoly::scaled(const BigInt& c) const {
  if (c == 0) return TermPoly(vars_);
  TermPoly out = *this;
  for (auto& [m, v] : out.terms_) v *= c;
  return out;
}

TermPoly TermPoly::mul(const TermPoly& other, std::size_t budget) const {
  const auto vars = merge_variables(vars_, other.vars_);
  const TermPoly lhs = over(vars);
  const TermPoly rhs = other.over(vars);
  Accumulator acc;
  acc.reserve(std::min<std::size_t>(lhs.size() * rhs.size(), budget) + 1);
  Monomial m(vars.size());
  for (const auto& [ma, ca] : lhs.terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      auto [it, inserted] = acc.try_emplace(m);
      mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      if (inserted) check_budget(acc.size(), budget);
    }
  }
  TermPoly out(vars);
  for (auto& [mono, c] : acc) {
    if (c != 0) out.terms_.emplace(mono, std::move(c));
  }
  return out;
}

TermPoly TermPoly::pow(std::uint64_t e, std::size_t budget) const {
  TermPoly result = constant(1, vars_);
  TermPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result.mul(base, budget);
    e >>= 1U;
    if (e > 0) base = base.mul(base, budget);
  }
  return result;
}

TermPoly TermPoly::substitute(const std::map<std::string, TermPoly>& repl,
                              std::size_t budget) const {
  // Variables that stay symbolic keep their order; replacements append theirs.
  std::vector<std::string> vars;
  for (const auto& v : vars_) {
    if (!repl.count(v)) vars.push_back(v);
  }
  for (const auto& v : vars_) {
    auto it = repl.find(v);
    if (it != repl.end()) vars = merge_variables(vars, it->second.variables());
  }
  std::vector<std::size_t> kept_pos(vars_.size(), vars.size());
  std::vector<const TermPoly*> replacement(vars_.size(), nullptr);
  std::vector<TermPoly> lifted;
  lifted.reserve(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = repl.find(vars_[i]);
    if (it == repl.end()) {
      kept_pos[i] = static_cast<std::size_t>(
          std::find(vars.begin(), vars.end(), vars_[i]) - vars.begin());
    } else {
      lifted.push_back(it->second.over(vars));
      replacement[i] = &lifted.back();
    }
  }
  std::vector<std::vector<TermPoly>> powers(vars_.size());
  Accumulator acc;
  for (const auto& [m, c] : terms_) {
    Monomial rest(vars.size(), 0);
    TermPoly term = constant(c, vars);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!replacement[i]) {
        rest[kept_pos[i]] = m[i];
        continue;
      }
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(1, vars));
      while (cache.size() <= m[i]) cache.push_back(cache.back().mul(*replacement[i], budget));
      term = term.mul(cache[m[i]], budget);
    }
    for (const auto& [tm, tc] : term.terms_) {
      Monomial full = tm;
      for (std::size_t j = 0; j < full.size(); ++j) full[j] += rest[j];
      acc[full] += tc;
    }
    check_budget(acc.size(), budget);
  }
  TermPoly out(vars);
  for (auto& [mono, c] : acc) {
    if (c != 0) out.terms_.emplace(mono, std::move(c));
  }
  return out;
}

BigInt TermPoly::eval(const Assignment& at) const {
  std::vector<const BigInt*> values(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = at.find(vars_[i]);
    if (it == at.end()) throw DomainError("missing value for variable '" + vars_[i] + "'");
    values[i] = &it->second;
  }
  std::vector<std::vector<BigInt>> powers(vars_.size());
  BigInt total = 0;
  BigInt term;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(1);
      while (cache.size() <= m[i]) cache.push_back(cache.back() * *values[i]);
      term *= cache[m[i]];
    }
    total += term;
  }
  return total;
}

TermPoly operator+(const TermPoly& a, const TermPoly& b) { return a.add(b); }
TermPoly operator-(const TermPoly& a, const TermPoly& b) { return a.sub(b); }
TermPoly operator*(const TermPoly& a, const TermPoly& b) { return a.mul(b); }

}  // namespace dioph
