#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/prime_field.hpp"

namespace hkd {

// Column-major sparse matrix over F_p. Each column is sorted by row index,
// holds no duplicate rows and no zero values. The colength matrices built
// from trinomial relations have at most three entries per column, which is
// what the rank routine below is tuned for.
struct SparseColumnMatrix {
    struct Entry {
        std::uint32_t row;
        std::uint32_t val;
    };

    std::uint32_t rows = 0;
    PrimeField field;
    std::vector<std::vector<Entry>> cols;

    explicit SparseColumnMatrix(PrimeField f, std::uint32_t nrows = 0)
        : rows(nrows), field(f) {}

    void add_column(std::vector<Entry> entries) {
        cols.push_back(std::move(entries));
    }

    void check_well_formed() const {
        for (const auto& col : cols) {
            std::uint32_t prev_row = 0;
            bool first = true;
            for (const auto& e : col) {
                if (e.row >= rows)
                    throw InvalidInput("sparse matrix entry row out of range");
                if (!first && e.row <= prev_row)
                    throw InvalidInput("sparse matrix column rows not strictly increasing");
                if (e.val == 0 || e.val >= field.modulus())
                    throw InvalidInput("sparse matrix entry value out of field range");
                prev_row = e.row;
                first = false;
            }
        }
    }
};

inline SparseColumnMatrix transpose(const SparseColumnMatrix& m) {
    SparseColumnMatrix t(m.field, static_cast<std::uint32_t>(m.cols.size()));
    t.cols.resize(m.rows);
    for (std::uint32_t c = 0; c < m.cols.size(); ++c)
        for (const auto& e : m.cols[c])
            t.cols[e.row].push_back({c, e.val});
    // columns of t come out sorted because we scan c in increasing order
    return t;
}

// Dense elimination, kept as the independent oracle for small widths
// (the unit tests cross-check rank() against this up to width 256).
inline std::uint64_t rank_dense(const SparseColumnMatrix& m) {
    const PrimeField& F = m.field;
    const std::size_t nc = m.cols.size();
    std::vector<std::vector<std::uint32_t>> a(m.rows, std::vector<std::uint32_t>(nc, 0));
    for (std::size_t c = 0; c < nc; ++c)
        for (const auto& e : m.cols[c])
            a[e.row][c] = e.val;
    std::uint64_t rank = 0;
    std::size_t col = 0;
    for (std::size_t row = 0; row < m.rows && col < nc; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && a[piv][col] == 0)
            ++piv;
        if (piv == m.rows)
            continue;
        std::swap(a[piv], a[row]);
        const std::uint32_t inv = F.inv(a[row][col]);
        for (std::size_t j = col; j < nc; ++j)
            a[row][j] = F.mul(a[row][j], inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || a[i][col] == 0)
                continue;
            const std::uint32_t f = a[i][col];
            for (std::size_t j = col; j < nc; ++j)
                a[i][j] = F.sub(a[i][j], F.mul(f, a[row][j]));
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace detail {

struct ColumnOrder {
    // min-heap on (column length, column id); stale snapshots are skipped
    bool operator()(const std::pair<std::uint32_t, std::uint32_t>& a,
                    const std::pair<std::uint32_t, std::uint32_t>& b) const {
        return a > b;
    }
};

// Eliminates one connected component. Columns are given as indices into
// `all`; entries are copied into local working storage.
inline std::uint64_t eliminate_component(const PrimeField& F,
                                         const std::vector<std::vector<SparseColumnMatrix::Entry>>& all,
                                         const std::vector<std::uint32_t>& members) {
    using Entry = SparseColumnMatrix::Entry;
    const std::size_t n = members.size();
    std::vector<std::vector<Entry>> work(n);
    for (std::size_t i = 0; i < n; ++i)
        work[i] = all[members[i]];

    std::unordered_map<std::uint32_t, std::uint32_t> row_degree;
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> row_cols; // may hold stale ids
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : work[i]) {
            ++row_degree[e.row];
            row_cols[e.row].push_back(static_cast<std::uint32_t>(i));
        }

    std::priority_queue<std::pair<std::uint32_t, std::uint32_t>,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>>,
                        ColumnOrder>
        heap;
    std::vector<char> alive(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        heap.push({static_cast<std::uint32_t>(work[i].size()), static_cast<std::uint32_t>(i)});

    auto value_at = [&](const std::vector<Entry>& col, std::uint32_t row) -> std::uint32_t {
        auto it = std::lower_bound(col.begin(), col.end(), row,
                                   [](const Entry& e, std::uint32_t r) { return e.row < r; });
        return (it != col.end() && it->row == row) ? it->val : 0;
    };

    std::uint64_t rank = 0;
    std::vector<Entry> merged;
    while (!heap.empty()) {
        auto [sz, c] = heap.top();
        heap.pop();
        if (!alive[c] || work[c].size() != sz || sz == 0)
            continue;

        // pivot row: fewest live occurrences, then smallest row index
        std::uint32_t pivot_row = 0;
        std::uint32_t best_deg = UINT32_MAX;
        for (const auto& e : work[c]) {
            std::uint32_t deg = row_degree[e.row];
            if (deg < best_deg || (deg == best_deg && e.row < pivot_row)) {
                best_deg = deg;
                pivot_row = e.row;
            }
        }
        const std::uint32_t pivot_val = value_at(work[c], pivot_row);
        const std::uint32_t pivot_inv = F.inv(pivot_val);
        ++rank;

        // collect live columns (other than c) still containing the pivot row
        std::vector<std::uint32_t> targets;
        auto& incident = row_cols[pivot_row];
        for (std::uint32_t id : incident) {
            if (id == c || !alive[id])
                continue;
            if (value_at(work[id], pivot_row) != 0)
                targets.push_back(id);
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

        for (std::uint32_t t : targets) {
            const std::uint32_t factor = F.mul(value_at(work[t], pivot_row), pivot_inv);
            merged.clear();
            merged.reserve(work[t].size() + work[c].size());
            auto a = work[t].begin(), ae = work[t].end();
            auto b = work[c].begin(), be = work[c].end();
            while (a != ae || b != be) {
                if (b == be || (a != ae && a->row < b->row)) {
                    merged.push_back(*a);
                    ++a;
                } else if (a == ae || b->row < a->row) {
                    const std::uint32_t v = F.neg(F.mul(factor, b->val));
                    if (v != 0) {
                        merged.push_back({b->row, v});
                        ++row_degree[b->row];
                        row_cols[b->row].push_back(t);
                    }
                    ++b;
                } else {
                    const std::uint32_t v = F.sub(a->val, F.mul(factor, b->val));
                    if (v != 0)
                        merged.push_back({a->row, v});
                    else
                        --row_degree[a->row];
                    ++a;
                    ++b;
                }
            }
            work[t].swap(merged);
            if (work[t].empty())
                alive[t] = 0;
            else
                heap.push({static_cast<std::uint32_t>(work[t].size()), t});
        }

        for (const auto& e : work[c])
            --row_degree[e.row];
        alive[c] = 0;
        work[c].clear();
        work[c].shrink_to_fit();
    }
    return rank;
}

} // namespace detail

// Rank over F_p by column-sparse Gaussian elimination. Pivot columns are
// taken shortest-first with deterministic tie-breaks (column id, then row
// index), so the elimination order is reproducible across runs and thread
// schedules. Columns are first split into connected components (columns
// sharing a row), which the lattice-shaped colength matrices decompose
// into many small independent blocks.
inline std::uint64_t rank(const SparseColumnMatrix& m) {
    const std::size_t nc = m.cols.size();
    if (nc == 0 || m.rows == 0)
        return 0;

    std::vector<std::uint32_t> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::uint32_t> rank_uf(nc, 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (rank_uf[a] < rank_uf[b])
            std::swap(a, b);
        parent[b] = a;
        if (rank_uf[a] == rank_uf[b])
            ++rank_uf[a];
    };

    std::unordered_map<std::uint32_t, std::uint32_t> row_owner;
    row_owner.reserve(m.rows);
    for (std::uint32_t c = 0; c < nc; ++c)
        for (const auto& e : m.cols[c]) {
            auto [it, inserted] = row_owner.try_emplace(e.row, c);
            if (!inserted)
                unite(it->second, c);
        }

    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> comps;
    for (std::uint32_t c = 0; c < nc; ++c) {
        if (m.cols[c].empty())
            continue;
        comps[find(c)].push_back(c);
    }

    // order components by smallest member for determinism
    std::vector<const std::vector<std::uint32_t>*> ordered;
    ordered.reserve(comps.size());
    for (const auto& [root, members] : comps)
        ordered.push_back(&members);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->front() < b->front(); });

    std::uint64_t total = 0;
    for (const auto* members : ordered)
        total += detail::eliminate_component(m.field, m.cols, *members);
    return total;
}

} // namespace hkd
