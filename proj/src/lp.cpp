#include "secondary/lp.hpp"

#include <utility>

#include "secondary/errors.hpp"

namespace secondary {

std::optional<QVec> lp_feasible(int num_vars, const std::vector<LinearConstraint>& constraints) {
    for (const auto& c : constraints)
        if (static_cast<int>(c.coeffs.size()) != num_vars)
            throw WorkbenchError("constraint arity mismatch");
    const int m = static_cast<int>(constraints.size());
    if (m == 0) return QVec(static_cast<size_t>(num_vars), Rational(0));

    // Standard form: x = xp - xn (both >= 0), one slack per Ge row, one
    // artificial per row; minimize the artificial sum.
    int numGe = 0;
    for (const auto& c : constraints)
        if (c.op == RelOp::Ge) ++numGe;
    const int nPN = 2 * num_vars;
    const int nSlack = numGe;
    const int nArt = m;
    const int n = nPN + nSlack + nArt;

    // Tableau rows: [A | b], b >= 0 after sign normalization.
    QMat tab(static_cast<size_t>(m), QVec(static_cast<size_t>(n) + 1, Rational(0)));
    std::vector<int> basis(static_cast<size_t>(m));
    int slackAt = nPN;
    for (int i = 0; i < m; ++i) {
        const auto& c = constraints[static_cast<size_t>(i)];
        for (int j = 0; j < num_vars; ++j) {
            tab[i][static_cast<size_t>(j)] = c.coeffs[static_cast<size_t>(j)];
            tab[i][static_cast<size_t>(num_vars + j)] = -c.coeffs[static_cast<size_t>(j)];
        }
        if (c.op == RelOp::Ge) tab[i][static_cast<size_t>(slackAt++)] = -1;  // a.x - s = rhs
        tab[i][static_cast<size_t>(n)] = c.rhs;
        if (tab[i][static_cast<size_t>(n)] < 0)
            for (int j = 0; j <= n; ++j) tab[i][static_cast<size_t>(j)] = -tab[i][static_cast<size_t>(j)];
        tab[i][static_cast<size_t>(nPN + nSlack + i)] = 1;
        basis[static_cast<size_t>(i)] = nPN + nSlack + i;
    }

    // Phase-1 objective row: minimize sum of artificials. Reduced costs start as
    // z_j - c_j with c = indicator of artificials; expressing the objective in
    // terms of the current basis means subtracting each constraint row.
    QVec obj(static_cast<size_t>(n) + 1, Rational(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) obj[static_cast<size_t>(j)] -= tab[i][static_cast<size_t>(j)];
    for (int i = 0; i < m; ++i) obj[static_cast<size_t>(nPN + nSlack + i)] = 0;

    auto pivot = [&](int prow, int pcol) {
        Rational pv = tab[prow][static_cast<size_t>(pcol)];
        for (int j = 0; j <= n; ++j) tab[prow][static_cast<size_t>(j)] /= pv;
        for (int i = 0; i < m; ++i) {
            if (i == prow) continue;
            Rational f = tab[i][static_cast<size_t>(pcol)];
            if (f == 0) continue;
            for (int j = 0; j <= n; ++j)
                tab[i][static_cast<size_t>(j)] -= f * tab[prow][static_cast<size_t>(j)];
        }
        Rational f = obj[static_cast<size_t>(pcol)];
        if (f != 0)
            for (int j = 0; j <= n; ++j) obj[static_cast<size_t>(j)] -= f * tab[prow][static_cast<size_t>(j)];
        basis[static_cast<size_t>(prow)] = pcol;
    };

    while (true) {
        // Bland: smallest-index entering column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (obj[static_cast<size_t>(j)] < 0) { enter = j; break; }
        if (enter < 0) break;
        // Bland: ratio test ties broken by smallest basis variable index.
        int leave = -1;
        Rational best = 0;
        for (int i = 0; i < m; ++i) {
            const Rational& a = tab[i][static_cast<size_t>(enter)];
            if (a <= 0) continue;
            Rational ratio = tab[i][static_cast<size_t>(n)] / a;
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0)
            throw WorkbenchError("phase-1 objective unbounded (cannot happen)");
        pivot(leave, enter);
    }

    // Feasible iff all artificials reached zero (objective value is -sum).
    if (obj[static_cast<size_t>(n)] != 0) return std::nullopt;

    QVec x(static_cast<size_t>(num_vars), Rational(0));
    for (int i = 0; i < m; ++i) {
        int bv = basis[static_cast<size_t>(i)];
        const Rational& val = tab[i][static_cast<size_t>(n)];
        if (bv < num_vars)
            x[static_cast<size_t>(bv)] += val;
        else if (bv < nPN)
            x[static_cast<size_t>(bv - num_vars)] -= val;
    }
    return x;
}

}  // namespace secondary
