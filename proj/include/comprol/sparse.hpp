#pragma once

#include <map>
#include <utility>
#include <vector>

#include "comprol/digraph.hpp"
#include "comprol/rational.hpp"

namespace comprol {

// Sparse row vector, 1-based column index -> nonzero value.
using SparseVector = std::map<int, Rational>;

struct Triplet {
    int row = 0;
    int col = 0;
    Rational value;
};

// Row-major sparse matrix over Rational, 1-based indices. Zero entries are
// never stored, so operator== is exact structural equality.
class SparseMatrix {
public:
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows + 1) {
        if (rows < 0 || cols < 0) throw InvalidInput("negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const SparseVector& row(int i) const { return data_[check_row(i)]; }

    Rational get(int i, int j) const {
        check_col(j);
        const SparseVector& r = data_[check_row(i)];
        auto it = r.find(j);
        return it == r.end() ? Rational(0) : it->second;
    }

    void set(int i, int j, Rational v) {
        check_col(j);
        SparseVector& r = data_[check_row(i)];
        if (v == 0)
            r.erase(j);
        else
            r[j] = std::move(v);
    }

    void add(int i, int j, const Rational& v) { set(i, j, get(i, j) + v); }

    void set_row(int i, SparseVector r) {
        for (auto it = r.begin(); it != r.end();) {
            check_col(it->first);
            it = (it->second == 0) ? r.erase(it) : std::next(it);
        }
        data_[check_row(i)] = std::move(r);
    }

    Rational row_sum(int i) const {
        Rational s = 0;
        for (const auto& [j, v] : row(i)) {
            (void)j;
            s += v;
        }
        return s;
    }

    int nonzero_count() const {
        int n = 0;
        for (const auto& r : data_) n += static_cast<int>(r.size());
        return n;
    }

    std::vector<Triplet> triplets() const {
        std::vector<Triplet> out;
        for (int i = 1; i <= rows_; ++i)
            for (const auto& [j, v] : data_[i]) out.push_back({i, j, v});
        return out;
    }

    bool operator==(const SparseMatrix&) const = default;

private:
    int check_row(int i) const {
        if (i < 1 || i > rows_) throw InvalidInput("row index " + std::to_string(i) + " out of range");
        return i;
    }
    void check_col(int j) const {
        if (j < 1 || j > cols_) throw InvalidInput("column index " + std::to_string(j) + " out of range");
    }

    int rows_;
    int cols_;
    std::vector<SparseVector> data_;  // index 0 unused
};

// (E x N) incidence times (N x K) sparse: row i of the product is
// A.row(head(i)) - A.row(tail(i)).
inline SparseMatrix multiply(const IncidenceMatrix& g, const SparseMatrix& a) {
    if (g.cols() != a.rows()) throw InvalidInput("incidence/matrix dimension mismatch");
    SparseMatrix out(g.rows(), a.cols());
    for (int i = 1; i <= g.rows(); ++i) {
        const Edge& e = g.row(i);
        SparseVector r = a.row(e.head);
        for (const auto& [j, v] : a.row(e.tail)) {
            auto [it, inserted] = r.emplace(j, -v);
            if (!inserted) it->second -= v;
        }
        out.set_row(i, std::move(r));
    }
    return out;
}

// (R x E) sparse times (E x N) incidence: row i of the product scatters each
// coefficient b_ie onto the two endpoint columns of edge e.
inline SparseMatrix multiply(const SparseMatrix& b, const IncidenceMatrix& g) {
    if (b.cols() != g.rows()) throw InvalidInput("matrix/incidence dimension mismatch");
    SparseMatrix out(b.rows(), g.cols());
    for (int i = 1; i <= b.rows(); ++i) {
        SparseVector r;
        for (const auto& [e, v] : b.row(i)) {
            const Edge& ed = g.row(e);
            r[ed.tail] -= v;
            r[ed.head] += v;
        }
        out.set_row(i, std::move(r));
    }
    return out;
}

}  // namespace comprol
