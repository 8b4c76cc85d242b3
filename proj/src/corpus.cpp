#include "latcover/corpus.hpp"

#include <random>

#include "latcover/errors.hpp"
#include "latcover/normality.hpp"

namespace latcover::corpus {

namespace {

// rng() % n is stable across platforms; the standard distributions are not.
long pick(std::mt19937& rng, long lo, long hi) {
    return lo + (long)(rng() % (unsigned long)(hi - lo + 1));
}

RatVec rat_point(std::mt19937& rng, int dim, long spread, long den) {
    RatVec v;
    for (int i = 0; i < dim; ++i) {
        Rat x(Int(pick(rng, -spread, spread)), Int(den));
        x.canonicalize();
        v.push_back(std::move(x));
    }
    return v;
}

// Random symmetric positive definite integer matrix M^T M + I.
RatMat spd_form(std::mt19937& rng, int dim, const Int& scale) {
    std::vector<std::vector<long>> m(dim, std::vector<long>(dim));
    for (auto& row : m)
        for (long& x : row) x = pick(rng, -2, 2);
    RatMat a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            long g = i == j ? 1 : 0;
            for (int k = 0; k < dim; ++k) g += m[k][i] * m[k][j];
            Rat x(Int(g), scale);
            x.canonicalize();
            a.at(i, j) = std::move(x);
        }
    return a;
}

template <class Make, class Keep>
std::vector<typename std::invoke_result<Make, std::mt19937&>::type> search(
    int count, unsigned seed, long attempts_per, Make make, Keep keep) {
    std::mt19937 rng(seed);
    std::vector<typename std::invoke_result<Make, std::mt19937&>::type> out;
    long budget = attempts_per * (count > 0 ? count : 1);
    while ((int)out.size() < count && budget-- > 0) {
        try {
            auto cand = make(rng);
            if (keep(cand)) out.push_back(std::move(cand));
        } catch (const Error&) {
        }
    }
    if ((int)out.size() < count)
        throw VerificationFailed("corpus search exhausted its attempt budget");
    return out;
}

}  // namespace

std::vector<LatticePolytope> normal_polytopes_3d(int count, unsigned seed,
                                                 size_t max_points) {
    AffineLattice z3 = AffineLattice::standard(3);
    return search(
        count, seed, 400,
        [&](std::mt19937& rng) {
            long side = pick(rng, 1, 3);
            int n = (int)pick(rng, 4, 8);
            std::vector<RatVec> pts;
            for (int i = 0; i < n; ++i) pts.push_back(rat_point(rng, 3, side, 1));
            return LatticePolytope::from_points(pts, z3);
        },
        [&](const LatticePolytope& p) {
            return p.dim() == 3 && p.lattice_points_sec().size() <= max_points &&
                   is_normal(p).is_normal;
        });
}

std::vector<LatticePolytope> non_very_ample_3d(int count, unsigned seed) {
    AffineLattice z3 = AffineLattice::standard(3);
    return search(
        count, seed, 4000,
        [&](std::mt19937& rng) {
            int n = (int)pick(rng, 4, 5);
            std::vector<RatVec> pts;
            for (int i = 0; i < n; ++i) pts.push_back(rat_point(rng, 3, 3, 1));
            return LatticePolytope::from_points(pts, z3);
        },
        [&](const LatticePolytope& p) {
            return p.dim() == 3 && p.lattice_points_sec().size() <= 40 &&
                   !is_very_ample(p).very_ample;
        });
}

std::vector<Ellipsoid> rational_ellipsoids_3d(int count, unsigned seed, size_t min_pts,
                                              size_t max_pts) {
    AffineLattice z3 = AffineLattice::standard(3);
    return search(
        count, seed, 600,
        [&](std::mt19937& rng) {
            Int scale(pick(rng, 2, 24));
            return Ellipsoid::make(spd_form(rng, 3, scale),
                                   rat_point(rng, 3, 6, pick(rng, 1, 3)));
        },
        [&](const Ellipsoid& e) {
            size_t n = ellipsoid_lattice_points(e, z3, true).size();
            return min_pts <= n && n <= max_pts;
        });
}

std::vector<Ellipsoid> half_integer_ellipsoids_3d(int count, unsigned seed) {
    AffineLattice z3 = AffineLattice::standard(3);
    return search(
        count, seed, 600,
        [&](std::mt19937& rng) {
            Int scale(pick(rng, 3, 20));
            return Ellipsoid::make(spd_form(rng, 3, scale), rat_point(rng, 3, 4, 2));
        },
        [&](const Ellipsoid& e) {
            size_t n = ellipsoid_lattice_points(e, z3, true).size();
            if (n < 4 || n > 40) return false;
            return hull_of_ellipsoid(e, z3).dim() == 3;
        });
}

std::vector<Ellipsoid> lattice_triangle_ellipses_2d(int count, unsigned seed) {
    AffineLattice z2 = AffineLattice::standard(2);
    return search(
        count, seed, 600,
        [&](std::mt19937& rng) {
            Int scale(pick(rng, 2, 12));
            return Ellipsoid::make(spd_form(rng, 2, scale),
                                   rat_point(rng, 2, 6, pick(rng, 1, 3)));
        },
        [&](const Ellipsoid& e) {
            std::vector<RatVec> pts = ellipsoid_lattice_points(e, z2, true);
            if (pts.size() < 3 || pts.size() > 60) return false;
            std::vector<RatVec> diffs;
            for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
            return rank_of_rows(diffs) == 2;
        });
}

std::vector<RationalCone> random_cones_3d(int count, unsigned seed, long max_mult) {
    AffineLattice z3 = AffineLattice::standard(3);
    return search(
        count, seed, 400,
        [&](std::mt19937& rng) {
            std::vector<IntVec> rays;
            for (int r = 0; r < 3; ++r) {
                IntVec v;
                for (int i = 0; i < 3; ++i) v.push_back(Int(pick(rng, -3, 3)));
                rays.push_back(std::move(v));
            }
            return RationalCone::from_rays(z3, rays);
        },
        [&](const RationalCone& c) {
            return c.is_simplicial() && c.multiplicity() <= max_mult;
        });
}

}  // namespace latcover::corpus
