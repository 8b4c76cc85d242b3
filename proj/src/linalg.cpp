#include "latcover/linalg.hpp"

#include <algorithm>
#include <cassert>

#include "latcover/errors.hpp"

namespace latcover {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntVec IntMat::row(int i) const {
    return IntVec(a.begin() + size_t(i) * cols, a.begin() + size_t(i + 1) * cols);
}

RatVec RatMat::row(int i) const {
    return RatVec(a.begin() + size_t(i) * cols, a.begin() + size_t(i + 1) * cols);
}

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
    return r;
}

IntVec add(const IntVec& x, const IntVec& y) {
    IntVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

IntVec sub(const IntVec& x, const IntVec& y) {
    IntVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

IntVec neg(const IntVec& x) {
    IntVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
    return r;
}

IntVec scale(const Int& c, const IntVec& x) {
    IntVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
    return r;
}

Int dot(const IntVec& x, const IntVec& y) {
    assert(x.size() == y.size());
    Int s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

RatVec add(const RatVec& x, const RatVec& y) {
    RatVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

RatVec sub(const RatVec& x, const RatVec& y) {
    RatVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

RatVec scale(const Rat& c, const RatVec& x) {
    RatVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
    return r;
}

Rat dot(const RatVec& x, const RatVec& y) {
    assert(x.size() == y.size());
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Rat dot(const IntVec& x, const RatVec& y) {
    assert(x.size() == y.size());
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += Rat(x[i]) * y[i];
    return s;
}

bool is_zero(const IntVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

bool is_zero(const RatVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Rat& v) { return v == 0; });
}

bool lex_less(const IntVec& x, const IntVec& y) {
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        int c = cmp(x[i], y[i]);
        if (c != 0) return c < 0;
    }
    return x.size() < y.size();
}

bool lex_less(const RatVec& x, const RatVec& y) {
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        int c = cmp(x[i], y[i]);
        if (c != 0) return c < 0;
    }
    return x.size() < y.size();
}

IntVec unit_vector(int d, int i) {
    IntVec e(d, Int(0));
    e[i] = 1;
    return e;
}

Int content(const IntVec& x) {
    Int g = 0;
    for (const Int& v : x) {
        Int av = abs(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), av.get_mpz_t());
    }
    return g;
}

IntVec primitive(const IntVec& x) {
    Int g = content(x);
    if (g == 0) throw ZeroVector("primitive of zero vector");
    IntVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] / g;
    return r;
}

IntVec primitive_direction(const RatVec& x) {
    Int l = 1;
    for (const Rat& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        Rat s = x[i] * Rat(l);
        assert(is_integer(s));
        r[i] = s.get_num();
    }
    return primitive(r);
}

RatVec mul(const RatMat& m, const RatVec& x) {
    assert(m.cols == (int)x.size());
    RatVec r(m.rows, Rat(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * x[j];
    return r;
}

IntVec mul(const IntMat& m, const IntVec& x) {
    assert(m.cols == (int)x.size());
    IntVec r(m.rows, Int(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * x[j];
    return r;
}

IntMat mul(const IntMat& x, const IntMat& y) {
    assert(x.cols == y.rows);
    IntMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    return r;
}

RatMat mul(const RatMat& x, const RatMat& y) {
    assert(x.cols == y.rows);
    RatMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    return r;
}

IntMat transpose(const IntMat& m) {
    IntMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

RatMat transpose(const RatMat& m) {
    RatMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

Int det(const IntMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    if (n == 0) return 1;
    IntMat w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = t / prev;  // exact division (Bareiss)
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

Rat det(const RatMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    RatMat w = m;
    Rat d = 1;
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (w.at(i, k) != 0) { p = i; break; }
        if (p < 0) return Rat(0);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            d = -d;
        }
        d *= w.at(k, k);
        Rat inv = Rat(1) / w.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            Rat f = w.at(i, k) * inv;
            if (f == 0) continue;
            for (int j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return d;
}

namespace {

// Row echelon over Q; returns rank, leaves w reduced.
int echelon(RatMat& w) {
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int p = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(r, j), w.at(p, j));
        Rat inv = Rat(1) / w.at(r, c);
        for (int i = r + 1; i < w.rows; ++i) {
            Rat f = w.at(i, c) * inv;
            if (f == 0) continue;
            for (int j = c; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace

int rank(const RatMat& m) {
    RatMat w = m;
    return echelon(w);
}

int rank_of_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return 0;
    RatMat m((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = Rat(rows[i][j]);
    return rank(m);
}

int rank_of_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return 0;
    RatMat m((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return rank(m);
}

std::optional<RatMat> inverse(const RatMat& m) {
    assert(m.rows == m.cols);
    int n = m.rows;
    RatMat w = m, inv = RatMat::identity(n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (w.at(i, k) != 0) { p = i; break; }
        if (p < 0) return std::nullopt;
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        Rat piv = Rat(1) / w.at(k, k);
        for (int j = 0; j < n; ++j) {
            w.at(k, j) *= piv;
            inv.at(k, j) *= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || w.at(i, k) == 0) continue;
            Rat f = w.at(i, k);
            for (int j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
    assert(m.rows == (int)b.size());
    RatMat w(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) w.at(i, j) = m.at(i, j);
        w.at(i, m.cols) = b[i];
    }
    // Gauss-Jordan on the augmented system.
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (w.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j <= m.cols; ++j) std::swap(w.at(r, j), w.at(p, j));
        Rat piv = Rat(1) / w.at(r, c);
        for (int j = 0; j <= m.cols; ++j) w.at(r, j) *= piv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || w.at(i, c) == 0) continue;
            Rat f = w.at(i, c);
            for (int j = 0; j <= m.cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m.rows; ++i)
        if (w.at(i, m.cols) != 0) return std::nullopt;
    RatVec x(m.cols, Rat(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = w.at(i, m.cols);
    return x;
}

IntVec hyperplane_normal(const std::vector<IntVec>& e) {
    std::vector<RatVec> r;
    r.reserve(e.size());
    for (const IntVec& v : e) r.push_back(to_rat(v));
    return hyperplane_normal(r);
}

IntVec hyperplane_normal(const std::vector<RatVec>& e) {
    int k = (int)e[0].size();
    assert((int)e.size() == k - 1);
    // Solve E * n = 0 for the 1-dimensional kernel.
    RatMat m(k - 1, k);
    for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) = e[i][j];
    RatMat w = m;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < k && r < k - 1; ++c) {
        int p = -1;
        for (int i = r; i < k - 1; ++i)
            if (w.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < k; ++j) std::swap(w.at(r, j), w.at(p, j));
        Rat piv = Rat(1) / w.at(r, c);
        for (int j = 0; j < k; ++j) w.at(r, j) *= piv;
        for (int i = 0; i < k - 1; ++i) {
            if (i == r || w.at(i, c) == 0) continue;
            Rat f = w.at(i, c);
            for (int j = 0; j < k; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r != k - 1) throw PreconditionUnmet("hyperplane_normal: rows not independent");
    std::vector<bool> is_pivot(k, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int free_col = -1;
    for (int c = 0; c < k; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    RatVec n(k, Rat(0));
    n[free_col] = 1;
    for (int i = 0; i < r; ++i) n[pivot_col[i]] = -w.at(i, free_col);
    return primitive_direction(n);
}

namespace {

// Applies the 2x2 unimodular transform that replaces rows (i, p) so that
// entry (i, c) becomes gcd and (p, c) becomes 0. Used by HNF and SNF.
void gcd_rows(IntMat& m, IntMat& u, int i, int p, int c) {
    Int a = m.at(i, c), b = m.at(p, c);
    if (b == 0) return;
    if (a != 0 && b % a == 0) {
        // Plain elimination keeps row i untouched, which the SNF sweep
        // relies on for termination.
        Int q = b / a;
        for (int j = 0; j < m.cols; ++j) m.at(p, j) -= q * m.at(i, j);
        for (int j = 0; j < u.cols; ++j) u.at(p, j) -= q * u.at(i, j);
        return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int af = a / g, bf = b / g;
    for (int j = 0; j < m.cols; ++j) {
        Int x = m.at(i, j), y = m.at(p, j);
        m.at(i, j) = s * x + t * y;
        m.at(p, j) = -bf * x + af * y;
    }
    for (int j = 0; j < u.cols; ++j) {
        Int x = u.at(i, j), y = u.at(p, j);
        u.at(i, j) = s * x + t * y;
        u.at(p, j) = -bf * x + af * y;
    }
}

// Column counterpart: makes entry (r, j) the gcd and clears (r, q), tracking
// the ops in v (which accumulates the right transform).
void gcd_cols(IntMat& m, IntMat& v, int j, int q, int r) {
    Int a = m.at(r, j), b = m.at(r, q);
    if (b == 0) return;
    if (a != 0 && b % a == 0) {
        Int f = b / a;
        for (int i = 0; i < m.rows; ++i) m.at(i, q) -= f * m.at(i, j);
        for (int i = 0; i < v.rows; ++i) v.at(i, q) -= f * v.at(i, j);
        return;
    }
    Int g, sc, tc;
    mpz_gcdext(g.get_mpz_t(), sc.get_mpz_t(), tc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int af = a / g, bf = b / g;
    for (int i = 0; i < m.rows; ++i) {
        Int x = m.at(i, j), y = m.at(i, q);
        m.at(i, j) = sc * x + tc * y;
        m.at(i, q) = -bf * x + af * y;
    }
    for (int i = 0; i < v.rows; ++i) {
        Int x = v.at(i, j), y = v.at(i, q);
        v.at(i, j) = sc * x + tc * y;
        v.at(i, q) = -bf * x + af * y;
    }
}

}  // namespace

HnfResult hnf_rows(const IntMat& m) {
    HnfResult res;
    res.h = m;
    res.u = IntMat::identity(m.rows);
    IntMat& h = res.h;
    IntMat& u = res.u;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (h.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r) {
            for (int j = 0; j < h.cols; ++j) std::swap(h.at(r, j), h.at(p, j));
            for (int j = 0; j < u.cols; ++j) std::swap(u.at(r, j), u.at(p, j));
        }
        for (int i = r + 1; i < m.rows; ++i) gcd_rows(h, u, r, i, c);
        if (h.at(r, c) < 0) {
            for (int j = 0; j < h.cols; ++j) h.at(r, j) = -h.at(r, j);
            for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
        }
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            if (q == 0) continue;
            for (int j = 0; j < h.cols; ++j) h.at(i, j) -= q * h.at(r, j);
            for (int j = 0; j < u.cols; ++j) u.at(i, j) -= q * u.at(r, j);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

SnfResult snf(const IntMat& m) {
    SnfResult res;
    res.s = m;
    res.u = IntMat::identity(m.rows);
    res.v = IntMat::identity(m.cols);
    IntMat& s = res.s;
    int n = std::min(m.rows, m.cols);
    for (int k = 0; k < n; ++k) {
        // Find a nonzero pivot in the remaining block.
        int pi = -1, pj = -1;
        for (int i = k; i < m.rows && pi < 0; ++i)
            for (int j = k; j < m.cols; ++j)
                if (s.at(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        // Move pivot to (k, k).
        if (pi != k) {
            for (int j = 0; j < m.cols; ++j) std::swap(s.at(k, j), s.at(pi, j));
            for (int j = 0; j < res.u.cols; ++j) std::swap(res.u.at(k, j), res.u.at(pi, j));
        }
        if (pj != k) {
            for (int i = 0; i < m.rows; ++i) std::swap(s.at(i, k), s.at(i, pj));
            for (int i = 0; i < res.v.rows; ++i) std::swap(res.v.at(i, k), res.v.at(i, pj));
        }
        // Alternate row/column elimination until the cross is clear.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = k + 1; i < m.rows; ++i)
                if (s.at(i, k) != 0) { gcd_rows(s, res.u, k, i, k); }
            // Column elimination: operate on the transpose-like pattern.
            for (int j = k + 1; j < m.cols; ++j) gcd_cols(s, res.v, k, j, k);
            for (int i = k + 1; i < m.rows; ++i)
                if (s.at(i, k) != 0) dirty = true;
        }
        if (s.at(k, k) < 0) {
            for (int j = 0; j < m.cols; ++j) s.at(k, j) = -s.at(k, j);
            for (int j = 0; j < res.u.cols; ++j) res.u.at(k, j) = -res.u.at(k, j);
        }
    }
    // Enforce the divisibility chain d_k | d_{k+1}.
    for (int k = 0; k + 1 < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
            if (s.at(l, l) == 0 || s.at(k, k) == 0) continue;
            if (s.at(l, l) % s.at(k, k) == 0) continue;
            // Add column l to column k, then re-eliminate the 2x2 block.
            for (int i = 0; i < m.rows; ++i) s.at(i, k) += s.at(i, l);
            for (int i = 0; i < res.v.rows; ++i) res.v.at(i, k) += res.v.at(i, l);
            gcd_rows(s, res.u, k, l, k);
            gcd_cols(s, res.v, k, l, k);
            if (s.at(k, k) < 0) {
                for (int j = 0; j < m.cols; ++j) s.at(k, j) = -s.at(k, j);
                for (int j = 0; j < res.u.cols; ++j) res.u.at(k, j) = -res.u.at(k, j);
            }
            if (s.at(l, l) < 0) {
                for (int j = 0; j < m.cols; ++j) s.at(l, j) = -s.at(l, j);
                for (int j = 0; j < res.u.cols; ++j) res.u.at(l, j) = -res.u.at(l, j);
            }
        }
    }
    for (int k = 0; k < n; ++k)
        if (s.at(k, k) != 0) res.divisors.push_back(s.at(k, k));
    return res;
}

std::vector<IntVec> saturated_span_basis(const std::vector<IntVec>& rows, int dim) {
    if (rows.empty()) return {};
    IntMat m((int)rows.size(), dim);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) = rows[i][j];
    SnfResult s = snf(m);
    int r = (int)s.divisors.size();
    // S = U M V  =>  rowspace(M) * V = rowspace(S) = <e_1..e_r> scaled, so the
    // saturation of rowspace(M) has basis rows e_i V^{-1}, i = 1..r.
    // V is unimodular; invert exactly over Q and read off integer rows.
    std::optional<RatMat> vi = inverse(to_rat(s.v));
    assert(vi.has_value());
    std::vector<IntVec> basis;
    for (int i = 0; i < r; ++i) {
        IntVec row(dim);
        for (int j = 0; j < dim; ++j) {
            assert(is_integer(vi->at(i, j)));
            row[j] = vi->at(i, j).get_num();
        }
        basis.push_back(std::move(row));
    }
    return basis;
}

LdlResult ldlt(const RatMat& a) {
    if (!is_symmetric(a)) throw PreconditionUnmet("ldlt: matrix not symmetric");
    int n = a.rows;
    LdlResult res;
    res.u = RatMat::identity(n);
    res.d.assign(n, Rat(0));
    RatMat w = a;
    for (int k = 0; k < n; ++k) {
        if (w.at(k, k) <= 0) throw PreconditionUnmet("ldlt: matrix not positive definite");
        res.d[k] = w.at(k, k);
        for (int j = k + 1; j < n; ++j) res.u.at(k, j) = w.at(k, j) / w.at(k, k);
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w.at(i, j) -= w.at(i, k) * w.at(k, j) / w.at(k, k);
    }
    return res;
}

bool is_symmetric(const RatMat& a) {
    if (a.rows != a.cols) return false;
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j)
            if (a.at(i, j) != a.at(j, i)) return false;
    return true;
}

bool is_positive_definite(const RatMat& a) {
    if (!is_symmetric(a)) return false;
    try {
        ldlt(a);
        return true;
    } catch (const PreconditionUnmet&) {
        return false;
    }
}

}  // namespace latcover
