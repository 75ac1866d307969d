#include "dioph/radical.hpp"

namespace dioph {

RadicalPoly::RadicalPoly(TermPoly poly, std::vector<std::string> radicands,
                         std::vector<std::string> symbols)
    : poly_(std::move(poly)), radicands_(std::move(radicands)), symbols_(std::move(symbols)) {
  if (radicands_.size() != symbols_.size()) throw DomainError("one radicand per radical symbol");
  for (const auto& s : symbols_) {
    for (const auto& r : radicands_) {
      if (s == r) throw DomainError("radical symbol '" + s + "' clashes with a radicand");
    }
  }
  poly_ = poly_.over(merge_variables(merge_variables(poly_.variables(), radicands_), symbols_));
}

namespace {

// s^e -> x^(e/2) s^(e%2); with `require_even`, odd e is a broken invariant.
TermPoly fold_symbol(const TermPoly& p, std::size_t s, std::size_t x, bool require_even) {
  TermPoly out(p.variables());
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    if (require_even && nm[s] % 2 != 0) {
      throw InvariantViolation("odd power of radical '" + p.variables()[s] + "' survived");
    }
    nm[x] += nm[s] / 2;
    nm[s] %= 2;
    out.add_term(nm, c);
  }
  return out;
}

TermPoly flip_symbol(const TermPoly& p, std::size_t s) {
  TermPoly out(p.variables());
  for (const auto& [m, c] : p.terms()) out.add_term(m, m[s] % 2 ? BigInt(-c) : c);
  return out;
}

}  // namespace

RadicalPoly RadicalPoly::reduced() const {
  TermPoly p = poly_;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    p = fold_symbol(p, p.index_of(symbols_[i]), p.index_of(radicands_[i]), false);
  }
  return RadicalPoly(p, radicands_, symbols_);
}

TermPoly sign_product_expand(const std::vector<std::string>& radicands, const RadicalPoly& offset,
                             std::size_t budget) {
  if (radicands.size() > 4) throw DomainError("sign products are limited to k <= 4");
  if (radicands != offset.radicands()) throw DomainError("radicands do not match the offset");
  TermPoly p = offset.reduced().poly();
  for (std::size_t i = 0; i < radicands.size(); ++i) {
    const std::size_t s = p.index_of(offset.symbols()[i]);
    const std::size_t x = p.index_of(radicands[i]);
    p = p.mul(flip_symbol(p, s), budget);
    p = fold_symbol(p, s, x, true);
  }
  std::vector<std::string> base;
  for (const auto& v : p.variables()) {
    bool symbol = false;
    for (const auto& s : offset.symbols()) symbol = symbol || s == v;
    if (!symbol) base.push_back(v);
  }
  return p.over(base);
}

TermPoly sign_product_core(unsigned k, std::size_t budget) {
  if (k == 0 || k > 4) throw DomainError("k must be in 1..4");
  std::vector<std::string> radicands, symbols;
  TermPoly offset = TermPoly::variable("t");
  for (unsigned j = 1; j <= k; ++j) {
    radicands.push_back("y" + std::to_string(j));
    symbols.push_back("s" + std::to_string(j));
    offset = offset + TermPoly::variable(symbols.back());
  }
  std::vector<std::string> order{"t"};
  order.insert(order.end(), radicands.begin(), radicands.end());
  return sign_product_expand(radicands, RadicalPoly(offset, radicands, symbols), budget).over(order);
}

}  // namespace dioph
