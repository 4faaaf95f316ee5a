#include "hk/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <gmpxx.h>
#include <set>

namespace hk {

namespace {

constexpr std::size_t kWeylCap = 1152;

IntMat identity_mat(int r)
{
    IntMat m(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b)
{
    std::size_t r = a.size();
    IntMat c(r, IntVec(r, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntVec mat_vec(const IntMat& a, const IntVec& v)
{
    IntVec out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

}  // namespace

IntMat cartan_matrix(char series, int r)
{
    auto bad = [&] {
        return std::invalid_argument(std::string("unsupported root system ") + series +
                                     std::to_string(r));
    };
    if (r < 1) throw bad();
    IntMat a(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i) a[i][i] = 2;
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) a[i][i + 1] = a[i + 1][i] = -1;
    };
    switch (series) {
    case 'A':
        chain(r);
        break;
    case 'B':
        if (r < 2) throw bad();
        chain(r);
        a[r - 1][r - 2] = -2;
        break;
    case 'C':
        if (r < 2) throw bad();
        chain(r);
        a[r - 2][r - 1] = -2;
        break;
    case 'D':
        if (r < 4) throw bad();
        chain(r - 1);
        a[r - 3][r - 1] = a[r - 1][r - 3] = -1;
        break;
    case 'G':
        if (r != 2) throw bad();
        a[0][1] = -3;
        a[1][0] = -1;
        break;
    default:
        throw bad();
    }
    return a;
}

int inversion_count(const std::vector<int>& perm)
{
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv;
}

RootSystem::RootSystem(char series, int rank)
    : series_(series), rank_(rank), cartan_(cartan_matrix(series, rank))
{
    const int r = rank_;
    const IntMat& A = cartan_;

    // Roots and coroots together, closed under simple reflections.
    std::map<IntVec, IntVec> seen;
    std::deque<std::pair<IntVec, IntVec>> queue;
    for (int i = 0; i < r; ++i) {
        IntVec e(r, 0);
        e[i] = 1;
        seen[e] = e;
        queue.emplace_back(e, e);
    }
    while (!queue.empty()) {
        auto [root, coroot] = queue.front();
        queue.pop_front();
        for (int k = 0; k < r; ++k) {
            int a = 0, b = 0;  // <root, alpha_k^v>, <alpha_k, coroot>
            for (int j = 0; j < r; ++j) {
                a += root[j] * A[k][j];
                b += coroot[j] * A[j][k];
            }
            IntVec nr = root, nc = coroot;
            nr[k] -= a;
            nc[k] -= b;
            if (!seen.count(nr)) {
                seen[nr] = nc;
                queue.emplace_back(nr, nc);
            }
        }
    }
    std::vector<std::pair<IntVec, IntVec>> pos;
    for (auto& [root, coroot] : seen)
        if (std::all_of(root.begin(), root.end(), [](int x) { return x >= 0; }))
            pos.emplace_back(root, coroot);
    auto height = [](const IntVec& v) {
        int h = 0;
        for (int x : v) h += x;
        return h;
    };
    std::stable_sort(pos.begin(), pos.end(), [&](const auto& x, const auto& y) {
        int hx = height(x.first), hy = height(y.first);
        return hx != hy ? hx < hy : x.first > y.first;
    });
    for (auto& [root, coroot] : pos) {
        pos_roots_.push_back(root);
        pos_coroots_.push_back(coroot);
    }
    // The highest short root has the highest coroot.
    int best = -1;
    for (std::size_t i = 0; i < pos_coroots_.size(); ++i) {
        int h = height(pos_coroots_[i]);
        if (h > best) {
            best = h;
            highest_short_ = i;
        }
    }

    // Weyl group by breadth-first search over left multiplication.
    std::vector<IntMat> sw(r), sc(r);
    for (int i = 0; i < r; ++i) {
        sw[i] = identity_mat(r);
        sc[i] = identity_mat(r);
        for (int k = 0; k < r; ++k) {
            sw[i][k][i] -= A[k][i];
            sc[i][k][i] -= A[i][k];
        }
    }
    WeylElement id{identity_mat(r), identity_mat(r), {}, 0};
    weyl_.push_back(id);
    index_of_[id.on_weights] = 0;
    for (std::size_t head = 0; head < weyl_.size(); ++head) {
        for (int i = 0; i < r; ++i) {
            IntMat m = mat_mul(sw[i], weyl_[head].on_weights);
            if (index_of_.count(m)) continue;
            if (weyl_.size() >= kWeylCap)
                throw std::invalid_argument("Weyl group of " + label() + " exceeds enumeration cap");
            WeylElement e;
            e.on_weights = m;
            e.on_coweights = mat_mul(sc[i], weyl_[head].on_coweights);
            e.word = {i};
            e.word.insert(e.word.end(), weyl_[head].word.begin(), weyl_[head].word.end());
            e.length = weyl_[head].length + 1;
            index_of_[m] = weyl_.size();
            weyl_.push_back(std::move(e));
        }
    }
    longest_ = weyl_.size() - 1;
    inverse_.resize(weyl_.size());
    for (std::size_t w = 0; w < weyl_.size(); ++w) {
        IntMat m = identity_mat(r);
        for (int i : weyl_[w].word) m = mat_mul(sw[i], m);  // reversed word
        inverse_[w] = index_of_.at(m);
    }
}

std::string RootSystem::label() const { return std::string(1, series_) + std::to_string(rank_); }

std::size_t RootSystem::multiply(std::size_t v, std::size_t w) const
{
    return index_of_.at(mat_mul(weyl_[v].on_weights, weyl_[w].on_weights));
}

Weight RootSystem::two_rho() const { return Weight{IntVec(rank_, 2)}; }
Weight RootSystem::rho() const { return Weight{IntVec(rank_, 1)}; }

int RootSystem::coxeter_number() const
{
    int h = 0;
    for (int x : highest_coroot()) h += x;  // <rho, coroot> = height in coroot basis
    return h + 1;
}

Weight RootSystem::root_as_weight(const IntVec& root) const
{
    Weight w{IntVec(rank_, 0)};
    for (int k = 0; k < rank_; ++k)
        for (int j = 0; j < rank_; ++j) w.c[k] += cartan_[k][j] * root[j];
    return w;
}

Coweight RootSystem::coroot_as_coweight(const IntVec& coroot) const
{
    Coweight x{IntVec(rank_, 0)};
    for (int k = 0; k < rank_; ++k)
        for (int i = 0; i < rank_; ++i) x.c[k] += coroot[i] * cartan_[i][k];
    return x;
}

int RootSystem::pair(const Weight& mu, const IntVec& coroot) const
{
    int s = 0;
    for (int i = 0; i < rank_; ++i) s += mu.c[i] * coroot[i];
    return s;
}

int RootSystem::pair_root(const IntVec& root, const Coweight& x) const
{
    int s = 0;
    for (int i = 0; i < rank_; ++i) s += root[i] * x.c[i];
    return s;
}

Weight RootSystem::act(std::size_t w, const Weight& mu) const
{
    return Weight{mat_vec(weyl_[w].on_weights, mu.c)};
}

Coweight RootSystem::act(std::size_t w, const Coweight& x) const
{
    return Coweight{mat_vec(weyl_[w].on_coweights, x.c)};
}

Weight RootSystem::dot_action(std::size_t w, const Weight& eta) const
{
    Weight shifted = eta;
    for (int i = 0; i < rank_; ++i) shifted.c[i] -= 1;
    Weight out = act(w, shifted);
    for (int i = 0; i < rank_; ++i) out.c[i] += 1;
    return out;
}

bool RootSystem::dominance_leq(const Coweight& mu, const Coweight& lambda) const
{
    // Solve sum_i c_i * row_i(A) = lambda - mu over Q and inspect signs.
    const int r = rank_;
    std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(r + 1));
    for (int k = 0; k < r; ++k) {
        for (int i = 0; i < r; ++i) m[k][i] = cartan_[i][k];
        m[k][r] = lambda.c[k] - mu.c[k];
    }
    for (int col = 0; col < r; ++col) {
        int piv = col;
        while (m[piv][col] == 0) ++piv;
        std::swap(m[piv], m[col]);
        for (int row = 0; row < r; ++row) {
            if (row == col || m[row][col] == 0) continue;
            mpq_class f = m[row][col] / m[col][col];
            for (int j = col; j <= r; ++j) m[row][j] -= f * m[col][j];
        }
    }
    for (int k = 0; k < r; ++k)
        if (m[k][r] / m[k][k] < 0) return false;
    return true;
}

bool RootSystem::is_dominant(const Coweight& x) const
{
    return std::all_of(x.c.begin(), x.c.end(), [](int v) { return v >= 0; });
}

bool RootSystem::is_dominant(const Weight& mu) const
{
    return std::all_of(mu.c.begin(), mu.c.end(), [](int v) { return v >= 0; });
}

bool RootSystem::is_restricted(const Weight& mu, int p) const
{
    return std::all_of(mu.c.begin(), mu.c.end(), [p](int v) { return v >= 0 && v < p; });
}

bool RootSystem::bottom_alcove_check(const Weight& mu, int p) const
{
    Weight shifted = mu;
    for (int& v : shifted.c) v += 1;
    for (const auto& cr : pos_coroots_)
        if (pair(shifted, cr) > p) return false;
    return true;
}

std::vector<int> RootSystem::permutation(std::size_t w) const
{
    if (series_ != 'A') throw std::invalid_argument("permutation: type A only");
    const int n = rank_ + 1;
    auto eps = [&](int k) {
        Weight e{IntVec(rank_, 0)};
        if (k < rank_) e.c[k] += 1;
        if (k > 0) e.c[k - 1] -= 1;
        return e;
    };
    std::vector<int> perm(n, -1);
    for (int k = 0; k < n; ++k) {
        Weight img = act(w, eps(k));
        for (int l = 0; l < n; ++l)
            if (eps(l) == img) perm[k] = l;
    }
    return perm;
}

}  // namespace hk
