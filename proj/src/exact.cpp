#include "flagtriad/exact.hpp"

#include <algorithm>

namespace flagtriad {

std::vector<std::size_t> row_echelon(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rat inv = Rat(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(ExactMatrix m) { return row_echelon(m).size(); }

std::optional<ExactVector> coordinates_in_span(const std::vector<ExactVector>& basis,
                                               const ExactVector& target) {
  if (basis.empty()) {
    if (is_zero(target)) return ExactVector{};
    return std::nullopt;
  }
  const std::size_t dim = basis[0].size();
  if (target.size() != dim) throw std::invalid_argument("coordinates_in_span: dimension mismatch");
  // Augmented system: columns are basis vectors, rhs is target.
  ExactMatrix m(dim, ExactVector(basis.size() + 1, Rat(0)));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = basis[j][i];
    m[i][basis.size()] = target[i];
  }
  const auto pivots = row_echelon(m);
  for (std::size_t p : pivots)
    if (p == basis.size()) return std::nullopt;  // rhs column is a pivot: inconsistent
  ExactVector coeff(basis.size(), Rat(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) coeff[pivots[k]] = m[k][basis.size()];
  return coeff;
}

std::vector<ExactVector> nullspace(const ExactMatrix& m_in, std::size_t ncols) {
  ExactMatrix m = m_in;
  const auto pivots = row_echelon(m);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<ExactVector> basis;
  for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;
    ExactVector v(ncols, Rat(0));
    v[free_col] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

ExactVector project_onto_span(const std::vector<ExactVector>& basis, const ExactVector& v) {
  if (basis.empty()) return zero_vector(v.size());
  const std::size_t k = basis.size();
  ExactMatrix gram(k, ExactVector(k, Rat(0)));
  ExactVector rhs(k, Rat(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  const ExactVector c = solve_square(gram, rhs);
  ExactVector out = zero_vector(v.size());
  for (std::size_t i = 0; i < k; ++i) out = add(out, scale(c[i], basis[i]));
  return out;
}

ExactVector solve_square(const ExactMatrix& a, const ExactVector& b) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  ExactMatrix m(n, ExactVector(n + 1, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("solve_square: not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n] = b[i];
  }
  const auto pivots = row_echelon(m);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw std::domain_error("solve_square: singular matrix");
  ExactVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

std::string rat_to_string(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) {
    s += "/";
    s += denominator(x).str();
  }
  return s;
}

Rat rat_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an exact fraction: '" + s + "'");
  }
}

std::string vec_to_string(const ExactVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(v[i]);
  }
  return s;
}

ExactVector vec_from_string(const std::string& s) {
  ExactVector v;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string tok = s.substr(pos, comma - pos);
    // trim spaces
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (!tok.empty()) v.push_back(rat_from_string(tok));
    if (comma == s.size()) break;
    pos = comma + 1;
  }
  return v;
}

}  // namespace flagtriad
