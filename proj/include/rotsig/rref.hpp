#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "rotsig/common.hpp"
#include "rotsig/rational.hpp"

namespace rotsig {

/// Row space over an exact field, maintained in reduced row echelon form.
/// Insertion order never changes the stored rows (the RREF basis of a row
/// space is canonical); it only decides which *candidates* get accepted
/// when callers extend a basis. Pivot rule: first nonzero column.
template <class Field>
class RowSpace {
public:
    explicit RowSpace(std::size_t ncols) : ncols_(ncols) {}

    std::size_t cols() const { return ncols_; }
    std::size_t rank() const { return rows_.size(); }

    const std::vector<std::vector<Field>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Reduce `row` against the basis in place; returns the column of its
    /// leading nonzero entry, or ncols() if it reduced to zero.
    std::size_t reduce(std::vector<Field>& row) const {
        require(row.size() == ncols_, "row width mismatch");
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Field& f = row[pivots_[r]];
            if (scalar_is_zero(f)) continue;
            const Field factor = f;  // basis pivot entries are 1
            for (std::size_t c = pivots_[r]; c < ncols_; ++c)
                row[c] -= factor * rows_[r][c];
        }
        for (std::size_t c = 0; c < ncols_; ++c)
            if (!scalar_is_zero(row[c])) return c;
        return ncols_;
    }

    bool contains(std::vector<Field> row) const { return reduce(row) == ncols_; }

    /// Insert a row; returns true iff it increased the rank.
    bool insert(std::vector<Field> row) {
        const std::size_t p = reduce(row);
        if (p == ncols_) return false;
        // normalize pivot to 1 and clear the pivot column above
        const Field pv = row[p];
        for (std::size_t c = p; c < ncols_; ++c) row[c] = row[c] / pv;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Field& f = rows_[r][p];
            if (scalar_is_zero(f)) continue;
            const Field factor = f;
            for (std::size_t c = p; c < ncols_; ++c)
                rows_[r][c] -= factor * row[c];
        }
        // keep rows ordered by pivot column
        const auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), p);
        const auto idx = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, p);
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
        return true;
    }

private:
    std::size_t ncols_;
    std::vector<std::vector<Field>> rows_;    // RREF, sorted by pivot column
    std::vector<std::size_t> pivots_;
};

/// Rank of a dense matrix over an exact field.
template <class Field>
std::size_t exact_rank(const std::vector<std::vector<Field>>& matrix, std::size_t ncols) {
    RowSpace<Field> space(ncols);
    for (const auto& row : matrix) space.insert(row);
    return space.rank();
}

}  // namespace rotsig
