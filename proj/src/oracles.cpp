#include "hopfinv/oracles.hpp"

#include <sstream>
#include <utility>

#include "hopfinv/invariant.hpp"

namespace hopfinv {

std::string GroupPresentation::to_string() const {
    std::ostringstream os;
    os << "<";
    for (int i = 0; i < generators; ++i) os << (i ? "," : "") << "x" << i;
    os << " |";
    for (std::size_t r = 0; r < relators.size(); ++r) {
        os << (r ? ", " : " ");
        const auto& w = relators[r];
        if (w.empty()) os << "1";
        // collapse runs into powers
        for (std::size_t k = 0; k < w.size();) {
            std::size_t j = k;
            while (j < w.size() && w[j] == w[k]) ++j;
            long e = static_cast<long>(j - k) * (w[k] > 0 ? 1 : -1);
            os << (k ? " " : "") << "x" << std::abs(w[k]) - 1;
            if (e != 1) os << "^" << e;
            k = j;
        }
    }
    os << ">";
    return os.str();
}

GroupPresentation pi1_presentation(const Diagram& d) {
    GroupPresentation p;
    p.generators = static_cast<int>(d.lower.size());
    for (auto& c : d.upper) {
        std::vector<int> w;
        for (int id : c.crossings) {
            int l = locate(d, Side::Lower, id).circle;
            w.push_back(d.crossings.at(id).eps * (l + 1));
        }
        p.relators.push_back(std::move(w));
    }
    return p;
}

long hom_count(const GroupPresentation& p, const GroupTable& G) {
    double space = 1;
    for (int i = 0; i < p.generators; ++i) space *= G.n;
    if (space > 1e7)
        throw Error("TooLarge", std::to_string(G.n) + "^" + std::to_string(p.generators) + " assignments");
    std::vector<int> img(p.generators, 0);
    long count = 0;
    for (;;) {
        bool ok = true;
        for (auto& w : p.relators) {
            int x = G.identity;
            for (int l : w) {
                int g = img[std::abs(l) - 1];
                x = G.mul[x][l > 0 ? g : G.inv[g]];
            }
            if (x != G.identity) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
        int i = 0;
        while (i < p.generators && ++img[i] == G.n) img[i++] = 0;
        if (i == p.generators) break;
    }
    return count;
}

namespace {

IntMatrix identity(std::size_t n) {
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    IntMatrix m(r, std::vector<mpz_class>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (a[i][j] != 0)
                for (std::size_t l = 0; l < c; ++l) m[i][l] += a[i][j] * b[j][l];
    return m;
}

mpz_class det(IntMatrix m) {
    std::size_t n = m.size();
    // Bareiss
    mpz_class prev = 1, sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n ? sign * m[n - 1][n - 1] : mpz_class(1);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
    std::size_t r = A.size(), c = r ? A[0].size() : 0;
    SmithForm f{identity(r), A, identity(c)};
    auto& D = f.D;
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(D[i], D[j]);
        std::swap(f.U[i], f.U[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : D) std::swap(row[i], row[j]);
        for (auto& row : f.V) std::swap(row[i], row[j]);
    };
    // row_i -= k row_j
    auto add_row = [&](std::size_t i, std::size_t j, const mpz_class& k) {
        for (std::size_t l = 0; l < c; ++l) D[i][l] -= k * D[j][l];
        for (std::size_t l = 0; l < r; ++l) f.U[i][l] -= k * f.U[j][l];
    };
    auto add_col = [&](std::size_t i, std::size_t j, const mpz_class& k) {
        for (std::size_t l = 0; l < r; ++l) D[l][i] -= k * D[l][j];
        for (std::size_t l = 0; l < c; ++l) f.V[l][i] -= k * f.V[l][j];
    };

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block goes to the pivot
            std::size_t pi = r, pj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (D[i][j] != 0 && (pi == r || abs(D[i][j]) < abs(D[pi][pj]))) pi = i, pj = j;
            if (pi == r) return f;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                mpz_class k = D[i][t] / D[t][t];
                if (k != 0) add_row(i, t, k);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                mpz_class k = D[t][j] / D[t][t];
                if (k != 0) add_col(j, t, k);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility: fold a row that the pivot does not divide into row t
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : f.U[t]) x = -x;
        }
    }
    return f;
}

bool smith_form_valid(const IntMatrix& A, const SmithForm& f) {
    if (mul(mul(f.U, A), f.V) != f.D) return false;
    if (abs(det(f.U)) != 1 || abs(det(f.V)) != 1) return false;
    std::size_t r = f.D.size(), c = r ? f.D[0].size() : 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (i != j && f.D[i][j] != 0) return false;
    for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
        const mpz_class &a = f.D[i][i], &b = f.D[i + 1][i + 1];
        if (a < 0) return false;
        if (a == 0 ? b != 0 : b % a != 0) return false;
    }
    return true;
}

mpz_class h1_order(const Diagram& d) {
    IntMatrix A;
    for (auto& row : intersection_matrix(d)) {
        A.emplace_back();
        for (long x : row) A.back().emplace_back(x);
    }
    SmithForm f = smith_normal_form(A);
    if (!smith_form_valid(A, f)) throw Error("InternalError", "Smith normal form failed its own check");
    mpz_class n = 1;
    for (std::size_t i = 0; i < A.size(); ++i) n *= f.D[i][i];
    return n;
}

bool CrossReport::ok() const {
    for (auto& c : checks)
        if (!c.ok) return false;
    return true;
}

std::string CrossReport::to_string() const {
    std::ostringstream os;
    for (auto& c : checks)
        os << (c.ok ? "ok    " : "FAIL  ") << c.what << "  " << c.value << " vs " << c.oracle << "\n";
    return os.str();
}

CrossReport cross_validate(const Diagram& d, const std::vector<GroupTable>& groups, bool exterior,
                           const ConventionRecord& rec) {
    CrossReport rep;
    auto pres = pi1_presentation(d);
    for (auto& G : groups) {
        Scalar v = evaluate(d, group_algebra(G), rec).value;
        long n = hom_count(pres, G);
        rep.checks.push_back({"F[" + G.name + "]", v.to_string(), std::to_string(n), v == Scalar(v.order(), n)});
    }
    if (exterior) {
        Scalar v = evaluate(d, exterior_algebra(1), rec).value;
        mpz_class n = h1_order(d);
        rep.checks.push_back({"exterior:1", v.to_string(), n.get_str(), v == Scalar(v.order(), Rational(n))});
    }
    return rep;
}

}  // namespace hopfinv
