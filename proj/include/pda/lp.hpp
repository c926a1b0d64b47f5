#pragma once

#include <vector>

namespace pda {

// Dense two-phase simplex for small LPs: maximize c::x subject to Ax <= b,
// x >= 0. Negative entries of b are handled by the phase-one pivot.
//
// solve() returns the optimal objective value, -infinity when infeasible,
// +infinity when unbounded. `iterations_exhausted` is set when the pivot
// budget ran out (callers should treat the result as unreliable).
class SimplexLp {
public:
    SimplexLp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
              const std::vector<double>& c);

    double solve(std::vector<double>& x);
    bool iterations_exhausted() const { return exhausted_; }

private:
    bool simplex(int phase);
    void pivot(int r, int s);

    int m_, n_;
    std::vector<int> basic_, nonbasic_;
    std::vector<std::vector<double>> tableau_;
    bool exhausted_ = false;
    long iterations_left_ = 0;
};

}  // namespace pda
