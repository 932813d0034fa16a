#include "carnot/lie.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace carnot {

namespace {

CarnotAlgebra::SparseVec to_sparse(const QVector& v) {
  CarnotAlgebra::SparseVec s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) s.emplace_back(k, v[k]);
  return s;
}

QVector to_dense(const CarnotAlgebra::SparseVec& s, std::size_t n) {
  QVector v(n);
  for (const auto& [k, c] : s) v[k] = c;
  return v;
}

}  // namespace

AlgebraPtr CarnotAlgebra::create(std::vector<int> layers, const std::vector<Entry>& brackets,
                                 std::vector<std::string> names) {
  const std::size_t n = layers.size();
  if (n == 0) throw InvalidAlgebra("algebra must have positive dimension");
  auto alg = std::shared_ptr<CarnotAlgebra>(new CarnotAlgebra());
  alg->step_ = *std::max_element(layers.begin(), layers.end());
  if (*std::min_element(layers.begin(), layers.end()) < 1) throw InvalidAlgebra("layers start at 1");
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  if (names.size() != n) throw InvalidAlgebra("names do not match dimension");
  alg->layers_ = std::move(layers);
  alg->names_ = std::move(names);

  std::vector<std::optional<QVector>> dense(n * n);
  for (const auto& e : brackets) {
    if (e.i >= n || e.j >= n) throw InvalidAlgebra("bracket index out of range");
    if (e.coeffs.size() != n) throw InvalidAlgebra("bracket coefficient vector has wrong length");
    if (e.i == e.j) {
      if (!is_zero_vector(e.coeffs)) throw InvalidAlgebra("[X,X] must vanish");
      continue;
    }
    QVector neg = e.coeffs;
    for (auto& c : neg) c = -c;
    auto put = [&](std::size_t a, std::size_t b, const QVector& v) {
      auto& slot = dense[a * n + b];
      if (slot && *slot != v)
        throw InvalidAlgebra("inconsistent entries for [X" + std::to_string(a + 1) + ", X" +
                             std::to_string(b + 1) + "] (antisymmetry violated)");
      slot = v;
    };
    put(e.i, e.j, e.coeffs);
    put(e.j, e.i, neg);
  }
  alg->table_.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k)
    if (dense[k]) alg->table_[k] = to_sparse(*dense[k]);
  alg->validate();
  return alg;
}

void CarnotAlgebra::validate() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : bracket_of(i, j))
        if (layers_[k] != layers_[i] + layers_[j])
          throw InvalidAlgebra("grading violated by [" + names_[i] + ", " + names_[j] + "]");

  AlgebraPtr self(std::shared_ptr<const CarnotAlgebra>(), this);  // non-owning view
  auto e = [&](std::size_t i) { return LieVec::basis(self, i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto s = bracket(e(i), bracket(e(j), e(k))) + bracket(e(j), bracket(e(k), e(i))) +
                 bracket(e(k), bracket(e(i), e(j)));
        if (!s.is_zero())
          throw InvalidAlgebra("Jacobi identity fails on (" + names_[i] + ", " + names_[j] +
                               ", " + names_[k] + ")");
      }

  // Stratification: V_{k+1} = [V_1, V_k].
  for (int k = 1; k < step_; ++k) {
    Subspace s(n);
    for (auto a : layer_indices(1))
      for (auto b : layer_indices(k)) s.insert(to_dense(bracket_of(a, b), n));
    if (s.dim() != layer_indices(k + 1).size())
      throw InvalidAlgebra("layer " + std::to_string(k + 1) + " is not generated by [V1, V" +
                           std::to_string(k) + "]");
  }
  for (int k = 1; k <= step_; ++k)
    if (layer_indices(k).empty()) throw InvalidAlgebra("empty layer " + std::to_string(k));
}

std::vector<std::size_t> CarnotAlgebra::layer_indices(int k) const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < layers_.size(); ++i)
    if (layers_[i] == k) r.push_back(i);
  return r;
}

std::string CarnotAlgebra::to_table() const {
  std::ostringstream os;
  os << "dim " << dim() << "\nlayers";
  for (int l : layers_) os << ' ' << l;
  os << "\nnames";
  for (const auto& s : names_) os << ' ' << s;
  os << '\n';
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const auto& b = bracket_of(i, j);
      if (b.empty()) continue;
      os << i + 1 << ' ' << j + 1;
      for (const auto& c : to_dense(b, dim())) os << ' ' << to_string(c);
      os << '\n';
    }
  return os.str();
}

AlgebraPtr CarnotAlgebra::from_table(std::istream& in) {
  std::size_t n = 0;
  std::vector<int> layers;
  std::vector<std::string> names;
  std::vector<Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto fail = [&](const std::string& what) {
      throw InvalidAlgebra("line " + std::to_string(lineno) + ": " + what);
    };
    if (head == "dim") {
      if (!(ls >> n) || n == 0) fail("bad dim");
    } else if (head == "layers") {
      int l;
      while (ls >> l) layers.push_back(l);
    } else if (head == "names") {
      std::string s;
      while (ls >> s) names.push_back(s);
    } else {
      if (n == 0) fail("'dim' must precede bracket rows");
      Entry e;
      std::size_t j = 0;
      try {
        e.i = std::stoul(head);
      } catch (const std::exception&) {
        fail("unknown directive '" + head + "'");
      }
      if (!(ls >> j)) fail("missing second index");
      if (e.i == 0 || j == 0 || e.i > n || j > n) fail("index out of range");
      e.i -= 1;
      e.j = j - 1;
      std::string tok;
      while (ls >> tok) e.coeffs.push_back(parse_rational(tok));
      if (e.coeffs.size() != n) fail("expected " + std::to_string(n) + " coefficients");
      entries.push_back(std::move(e));
    }
  }
  if (layers.size() != n) throw InvalidAlgebra("layers line must list " + std::to_string(n) + " entries");
  return create(std::move(layers), entries, std::move(names));
}

AlgebraPtr CarnotAlgebra::from_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra table '" + path + "'");
  return from_table(in);
}

bool operator==(const CarnotAlgebra& a, const CarnotAlgebra& b) {
  return a.layers_ == b.layers_ && a.table_ == b.table_;
}

QVector to_qvector(const LieVec& v) { return v.coeffs(); }

LieVec from_qvector(const AlgebraPtr& alg, const QVector& v) { return LieVec(alg, v); }

std::string to_string(const LieVec& v) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational& c = v[i];
    if (sgn(c) == 0) continue;
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    Rational a = abs(c);
    if (a != 1) os << to_string(a) << '*';
    os << v.algebra()->name(i);
  }
  return first ? "0" : os.str();
}

LieVec reduce_mod(const Subspace& s, const LieVec& v) {
  return LieVec(v.algebra(), s.reduce(v.coeffs()));
}

}  // namespace carnot
