#include "pda/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace pda {

namespace {
constexpr double kEps = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

SimplexLp::SimplexLp(const std::vector<std::vector<double>>& a,
                     const std::vector<double>& b, const std::vector<double>& c)
    : m_(static_cast<int>(b.size())),
      n_(static_cast<int>(c.size())),
      basic_(m_),
      nonbasic_(n_ + 1),
      tableau_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    if (a.size() != b.size()) throw std::invalid_argument("SimplexLp: A/b size mismatch");
    for (int i = 0; i < m_; ++i) {
        if (a[i].size() != static_cast<std::size_t>(n_)) {
            throw std::invalid_argument("SimplexLp: row width mismatch");
        }
        for (int j = 0; j < n_; ++j) tableau_[i][j] = a[i][j];
        basic_[i] = n_ + i;
        tableau_[i][n_] = -1.0;
        tableau_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
        nonbasic_[j] = j;
        tableau_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    tableau_[m_ + 1][n_] = 1.0;
    iterations_left_ = 600L * (m_ + n_ + 16);
}

void SimplexLp::pivot(int r, int s) {
    auto& row_r = tableau_[r];
    const double inv = 1.0 / row_r[s];
    for (int i = 0; i < m_ + 2; ++i) {
        if (i != r && std::abs(tableau_[i][s]) > kEps) {
            auto& row_i = tableau_[i];
            const double factor = row_i[s] * inv;
            for (int j = 0; j < n_ + 2; ++j) row_i[j] -= row_r[j] * factor;
            row_i[s] = row_r[s] * factor;
        }
    }
    for (int j = 0; j < n_ + 2; ++j) {
        if (j != s) row_r[j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
        if (i != r) tableau_[i][s] *= -inv;
    }
    row_r[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
}

bool SimplexLp::simplex(int phase) {
    const int objective_row = m_ + phase - 1;
    for (;;) {
        if (--iterations_left_ < 0) {
            exhausted_ = true;
            return false;
        }
        int s = -1;
        for (int j = 0; j < n_ + 1; ++j) {
            if (nonbasic_[j] == -phase) continue;
            if (s == -1 || std::pair(tableau_[objective_row][j], nonbasic_[j]) <
                               std::pair(tableau_[objective_row][s], nonbasic_[s])) {
                s = j;
            }
        }
        if (tableau_[objective_row][s] >= -kEps) return true;
        int r = -1;
        for (int i = 0; i < m_; ++i) {
            if (tableau_[i][s] <= kEps) continue;
            if (r == -1 ||
                std::pair(tableau_[i][n_ + 1] / tableau_[i][s], basic_[i]) <
                    std::pair(tableau_[r][n_ + 1] / tableau_[r][s], basic_[r])) {
                r = i;
            }
        }
        if (r == -1) return false;  // unbounded in this phase
        pivot(r, s);
    }
}

double SimplexLp::solve(std::vector<double>& x) {
    int r = 0;
    for (int i = 1; i < m_; ++i) {
        if (tableau_[i][n_ + 1] < tableau_[r][n_ + 1]) r = i;
    }
    if (tableau_[r][n_ + 1] < -kEps) {
        pivot(r, n_);
        if (!simplex(2) || tableau_[m_ + 1][n_ + 1] < -kEps) {
            return -kInf;  // infeasible (or pivot budget exhausted)
        }
        for (int i = 0; i < m_; ++i) {
            if (basic_[i] == -1) {
                int s = 0;
                for (int j = 1; j < n_ + 1; ++j) {
                    if (std::pair(tableau_[i][j], nonbasic_[j]) <
                        std::pair(tableau_[i][s], nonbasic_[s])) {
                        s = j;
                    }
                }
                pivot(i, s);
            }
        }
    }
    const bool ok = simplex(1);
    x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
        if (basic_[i] < n_) x[basic_[i]] = tableau_[i][n_ + 1];
    }
    return ok ? tableau_[m_][n_ + 1] : kInf;
}

}  // namespace pda
