#include "vqm/linalg.hpp"

#include <stdexcept>

namespace vqm::linalg {

std::size_t Echelon::reduce(Column& v) const {
    if (v.size() != dim_)
        throw std::invalid_argument("Echelon: dimension mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& c = v[pivots_[r]];
        if (c.is_zero())
            continue;
        Rational factor = c;
        for (std::size_t k = pivots_[r]; k < dim_; ++k)
            if (!rows_[r][k].is_zero())
                v[k] -= factor * rows_[r][k];
    }
    for (std::size_t k = 0; k < dim_; ++k)
        if (!v[k].is_zero())
            return k;
    return dim_;
}

bool Echelon::insert(const Column& v) {
    Column w = v;
    std::size_t lead = reduce(w);
    if (lead == dim_)
        return false;
    Rational inv = Rational(1) / w[lead];
    for (auto& x : w)
        x *= inv;
    // keep rows fully reduced at the new pivot
    for (auto& row : rows_) {
        Rational c = row[lead];
        if (c.is_zero())
            continue;
        for (std::size_t k = 0; k < dim_; ++k)
            if (!w[k].is_zero())
                row[k] -= c * w[k];
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(lead);
    return true;
}

bool Echelon::contains(const Column& v) const {
    Column w = v;
    return reduce(w) == dim_;
}

std::optional<std::vector<Rational>> solve(const std::vector<Column>& columns, const Column& target) {
    const std::size_t n = columns.size();
    const std::size_t dim = target.size();
    // augmented matrix, rows = coordinates
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(n + 1));
    for (std::size_t j = 0; j < n; ++j) {
        if (columns[j].size() != dim)
            throw std::invalid_argument("solve: dimension mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            a[i][j] = columns[j][i];
    }
    for (std::size_t i = 0; i < dim; ++i)
        a[i][n] = target[i];

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < dim; ++col) {
        std::size_t sel = row;
        while (sel < dim && a[sel][col].is_zero())
            ++sel;
        if (sel == dim)
            continue;
        std::swap(a[row], a[sel]);
        Rational inv = Rational(1) / a[row][col];
        for (std::size_t k = col; k <= n; ++k)
            a[row][k] *= inv;
        for (std::size_t i = 0; i < dim; ++i) {
            if (i == row || a[i][col].is_zero())
                continue;
            Rational c = a[i][col];
            for (std::size_t k = col; k <= n; ++k)
                if (!a[row][k].is_zero())
                    a[i][k] -= c * a[row][k];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < dim; ++i)
        if (!a[i][n].is_zero())
            return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
        x[pivot_col[r]] = a[r][n];
    return x;
}

} // namespace vqm::linalg
