#include "bobw/rounding.hpp"

#include <algorithm>
#include <map>

#include "bobw/error.hpp"

namespace bobw {

namespace {

void require_sub_stochastic(const Matrix& x) {
  if (x.empty()) throw PreconditionError("matrix has no rows");
  const std::size_t m = x[0].size();
  for (const auto& row : x) {
    if (row.size() != m) throw PreconditionError("ragged matrix");
    for (const auto& v : row)
      if (v < 0 || v > 1) throw PreconditionError("matrix entry outside [0,1]");
  }
}

// Kuhn's augmenting paths, rows and columns scanned in ascending order.
struct Matcher {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> row_of_col;
  std::vector<char> seen;

  Matcher(const std::vector<std::vector<int>>& a, int cols) : adj(a), row_of_col(cols, -1), seen(cols) {}

  bool augment(int r) {
    for (int c : adj[r]) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (row_of_col[c] < 0 || augment(row_of_col[c])) {
        row_of_col[c] = r;
        return true;
      }
    }
    return false;
  }

  bool perfect() {
    for (std::size_t r = 0; r < adj.size(); ++r) {
      std::fill(seen.begin(), seen.end(), 0);
      if (!augment(static_cast<int>(r))) return false;
    }
    return true;
  }
};

}  // namespace

Decomposition bvn_decompose(const Matrix& x) {
  require_sub_stochastic(x);
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(x[0].size());
  for (const auto& s : row_sums(x))
    if (s != 1) throw PreconditionError("bvn_decompose: every row must sum to 1");
  std::vector<Rational> colsum = column_sums(x);
  for (const auto& s : colsum)
    if (s > 1) throw PreconditionError("bvn_decompose: column sum exceeds 1");

  // Columns whose sum equals the remaining row level must be hit by every
  // term; the others are covered by m - n phantom rows whose mass is the slack.
  Decomposition d;
  d.rows = n;
  d.cols = m;
  Matrix r = x;
  Rational level = 1;
  std::map<std::vector<int>, std::size_t> seen_terms;
  std::vector<std::vector<int>> adj(m);
  while (level > 0) {
    for (int i = 0; i < n; ++i) {
      adj[i].clear();
      for (int j = 0; j < m; ++j)
        if (r[i][j] > 0) adj[i].push_back(j);
    }
    std::vector<int> slack_cols;
    for (int j = 0; j < m; ++j)
      if (colsum[j] < level) slack_cols.push_back(j);
    for (int d_row = n; d_row < m; ++d_row) adj[d_row] = slack_cols;

    Matcher match(adj, m);
    BOBW_ENSURE(match.perfect(), "bvn_decompose: no perfect matching on the support");

    std::vector<int> col_of_row(n, -1);
    Rational w = level;
    for (int j = 0; j < m; ++j) {
      const int row = match.row_of_col[j];
      if (row < n) {
        col_of_row[row] = j;
        w = std::min(w, r[row][j]);
      } else {
        w = std::min(w, Rational(level - colsum[j]));
      }
    }
    BOBW_ENSURE(w > 0, "bvn_decompose: zero-weight term");
    for (int i = 0; i < n; ++i) {
      r[i][col_of_row[i]] -= w;
      colsum[col_of_row[i]] -= w;
    }
    level -= w;
    auto [it, fresh] = seen_terms.emplace(col_of_row, d.terms.size());
    if (fresh)
      d.terms.push_back({w, col_of_row});
    else
      d.terms[it->second].weight += w;
  }
  return d;
}

Matrix reconstruct(const Decomposition& d) {
  Matrix x = zero_matrix(d.rows, d.cols);
  for (const auto& t : d.terms)
    for (int i = 0; i < d.rows; ++i) x[i][t.column_of_row[i]] += t.weight;
  return x;
}

void require_decomposes(const Decomposition& d, const Matrix& x) {
  if (x.empty() || d.rows != static_cast<int>(x.size()) || d.cols != static_cast<int>(x[0].size()))
    throw PreconditionError("decomposition shape does not match the matrix");
  Rational total = 0;
  for (const auto& t : d.terms) {
    if (t.weight <= 0) throw PreconditionError("decomposition weights must be positive");
    total += t.weight;
    if (static_cast<int>(t.column_of_row.size()) != d.rows) throw PreconditionError("decomposition term has wrong row count");
    std::vector<char> used(d.cols, 0);
    for (int c : t.column_of_row) {
      if (c < 0 || c >= d.cols || used[c]++) throw PreconditionError("decomposition term is not a partial matching");
    }
  }
  if (total != 1) throw PreconditionError("decomposition weights do not sum to 1");
  if (reconstruct(d) != x) throw PreconditionError("decomposition does not reconstruct the matrix");
}

namespace {

std::int64_t draw_below(SplitMix64& rng, std::int64_t bound) {
  return static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(bound)));
}

BigInt draw_below(SplitMix64& rng, const BigInt& bound) { return rng.uniform_below(bound); }

// Entries are scaled by a common denominator d so every shift stays integral.
template <class Int>
class Pipage {
 public:
  Pipage(std::vector<std::vector<Int>> a, Int d) : a_(std::move(a)), d_(std::move(d)) {
    n_ = static_cast<int>(a_.size());
    m_ = static_cast<int>(a_[0].size());
  }

  BinaryMatrix run(SplitMix64& rng) {
    std::vector<std::pair<int, int>> edges;
    while (find_structure(edges)) {
      Int alpha = d_, beta = d_;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const Int& v = at(edges[e]);
        if (e % 2 == 0) {
          alpha = std::min<Int>(alpha, d_ - v);
          beta = std::min<Int>(beta, v);
        } else {
          alpha = std::min<Int>(alpha, v);
          beta = std::min<Int>(beta, d_ - v);
        }
      }
      const bool up = draw_below(rng, Int(alpha + beta)) < beta;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool first = e % 2 == 0;
        if (up)
          at(edges[e]) += first ? alpha : Int(-alpha);
        else
          at(edges[e]) += first ? Int(-beta) : beta;
      }
    }
    BinaryMatrix out(n_, std::vector<std::uint8_t>(m_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < m_; ++j) {
        BOBW_ENSURE(a_[i][j] == 0 || a_[i][j] == d_, "dependent_round: entry left fractional");
        out[i][j] = a_[i][j] == d_;
      }
    return out;
  }

 private:
  Int& at(const std::pair<int, int>& e) { return a_[e.first][e.second]; }
  bool floating(int i, int j) const { return a_[i][j] > 0 && a_[i][j] < d_; }

  // Vertices 0..n-1 are rows, n..n+m-1 columns.
  int lowest_neighbor(int u, int not_this) const {
    if (u < n_) {
      for (int j = 0; j < m_; ++j)
        if (floating(u, j) && n_ + j != not_this) return n_ + j;
    } else {
      for (int i = 0; i < n_; ++i)
        if (floating(i, u - n_) && i != not_this) return i;
    }
    return -1;
  }

  std::pair<int, int> edge(int u, int v) const { return u < n_ ? std::pair{u, v - n_} : std::pair{v, u - n_}; }

  // Returns true with a cycle in `cycle` or false with a maximal path.
  bool walk(int start, std::vector<int>& verts) const {
    verts.assign(1, start);
    std::vector<int> pos(n_ + m_, -1);
    pos[start] = 0;
    for (;;) {
      const int u = verts.back();
      const int prev = verts.size() > 1 ? verts[verts.size() - 2] : -1;
      const int w = lowest_neighbor(u, prev);
      if (w < 0) return false;
      if (pos[w] >= 0) {
        verts.erase(verts.begin(), verts.begin() + pos[w]);
        verts.push_back(w);
        return true;
      }
      pos[w] = static_cast<int>(verts.size());
      verts.push_back(w);
    }
  }

  bool find_structure(std::vector<std::pair<int, int>>& edges) const {
    int start = -1;
    for (int u = 0; u < n_ + m_ && start < 0; ++u)
      if (lowest_neighbor(u, -1) >= 0) start = u;
    if (start < 0) return false;
    std::vector<int> verts;
    if (!walk(start, verts)) walk(verts.back(), verts);
    edges.clear();
    for (std::size_t k = 0; k + 1 < verts.size(); ++k) edges.push_back(edge(verts[k], verts[k + 1]));
    return true;
  }

  std::vector<std::vector<Int>> a_;
  Int d_;
  int n_ = 0, m_ = 0;
};

}  // namespace

BinaryMatrix dependent_round(const Matrix& x, SplitMix64& rng) {
  require_sub_stochastic(x);
  const auto cols = column_sums(x);
  for (const auto& c : cols)
    if (!is_integer(c)) throw PreconditionError("dependent_round: column sums must be integers");

  BigInt d = 1;
  for (const auto& row : x)
    for (const auto& v : row) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());

  BinaryMatrix out;
  const BigInt limit = BigInt(1) << 61;
  if (d < limit) {
    const std::int64_t dd = d.get_si();
    std::vector<std::vector<std::int64_t>> a;
    for (const auto& row : x) {
      auto& r = a.emplace_back();
      for (const auto& v : row) r.push_back(BigInt(v.get_num() * (d / v.get_den())).get_si());
    }
    out = Pipage<std::int64_t>(std::move(a), dd).run(rng);
  } else {
    std::vector<std::vector<BigInt>> a;
    for (const auto& row : x) {
      auto& r = a.emplace_back();
      for (const auto& v : row) r.push_back(v.get_num() * (d / v.get_den()));
    }
    out = Pipage<BigInt>(std::move(a), d).run(rng);
  }

  // Degree exactness is part of the contract, so check it on every sample.
  const auto rows = row_sums(x);
  for (std::size_t i = 0; i < out.size(); ++i) {
    long got = 0;
    for (auto b : out[i]) got += b;
    BOBW_ENSURE(Rational(got) >= Rational(rows[i] - 1) && Rational(got) <= Rational(rows[i] + 1),
                "dependent_round: row degree drifted");
    if (is_integer(rows[i])) BOBW_ENSURE(Rational(got) == rows[i], "dependent_round: integral row sum changed");
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    long got = 0;
    for (const auto& row : out) got += row[j];
    BOBW_ENSURE(Rational(got) == cols[j], "dependent_round: column sum changed");
  }
  return out;
}

BinaryMatrix dependent_round(const Matrix& x, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return dependent_round(x, rng);
}

Matrix SuperGoodMatrix::combined() const {
  Matrix out = base;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].push_back(super_column[i]);
  return out;
}

SuperGoodMatrix build_supergood_matrix(const TraceSummary& summary) {
  if (!summary.k) throw PreconditionError("super-good needs an integral last consumed mass");
  const int n = static_cast<int>(summary.X.size());
  const int m = n ? static_cast<int>(summary.X[0].size()) : 0;
  SuperGoodMatrix s;
  s.k = *summary.k;
  for (int g = 0; g < m; ++g)
    if (!contains(summary.L, g) && summary.eaten[g] == 1) s.base_goods.push_back(g);
  s.base = zero_matrix(n, static_cast<int>(s.base_goods.size()));
  for (int i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < s.base_goods.size(); ++b) s.base[i][b] = summary.X[i][s.base_goods[b]];
    s.super_column.push_back(summary.X[i][summary.last_goods[i]]);
  }
  for (const auto& r : row_sums(s.combined()))
    if (r != 1) throw PreconditionError("super-good matrix rows must sum to 1 (run eating for one unit)");
  Rational sc = 0;
  for (const auto& v : s.super_column) sc += v;
  BOBW_ENSURE(sc == s.k, "super-good column does not sum to k");
  return s;
}

}  // namespace bobw
