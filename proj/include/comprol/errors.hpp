#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace comprol {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed structural input: bad index ranges, self-loops, empty
// aggregates, dimension mismatches and the like.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// File-level syntax error; carries the offending location.
class ParseError : public Error {
public:
    ParseError(std::string source, int line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_;
};

// The aggregate sets do not cover every fine node.
class CoverViolation : public Error {
public:
    explicit CoverViolation(std::set<int> uncovered)
        : Error(describe(uncovered)), uncovered_(std::move(uncovered)) {}

    const std::set<int>& uncovered() const { return uncovered_; }

private:
    static std::string describe(const std::set<int>& uncovered) {
        std::string msg = "aggregates do not cover fine nodes:";
        for (int p : uncovered) msg += " " + std::to_string(p);
        return msg;
    }
    std::set<int> uncovered_;
};

class RowSumViolation : public Error {
public:
    RowSumViolation(int row, std::string actual_sum)
        : Error("row " + std::to_string(row) + " sums to " + actual_sum +
                ", expected 1"),
          row_(row),
          actual_sum_(std::move(actual_sum)) {}

    int row() const { return row_; }
    const std::string& actual_sum() const { return actual_sum_; }

private:
    int row_;
    std::string actual_sum_;
};

class SupportViolation : public Error {
public:
    SupportViolation(int row, int col)
        : Error("nonzero entry (" + std::to_string(row) + ", " +
                std::to_string(col) + ") outside the aggregate support"),
          row_(row),
          col_(col) {}

    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_;
    int col_;
};

class DuplicateEntry : public Error {
public:
    DuplicateEntry(int row, int col)
        : Error("duplicate entry (" + std::to_string(row) + ", " +
                std::to_string(col) + ")"),
          row_(row),
          col_(col) {}

    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_;
    int col_;
};

// Requested component already equals the full candidate node set, so no
// counterexample prolongation exists for it.
class NotStrictSubset : public Error {
public:
    using Error::Error;
};

// A restricted graph expected to be connected is not.
class DisconnectedInput : public Error {
public:
    using Error::Error;
};

// A per-edge flow system has no solution on the admissible support.
class Infeasible : public Error {
public:
    Infeasible(int fine_edge, std::vector<std::set<int>> components)
        : Error("fine edge " + std::to_string(fine_edge) +
                ": induced coarse subgraph splits into " +
                std::to_string(components.size()) + " components"),
          fine_edge_(fine_edge),
          components_(std::move(components)) {}

    int fine_edge() const { return fine_edge_; }
    const std::vector<std::set<int>>& components() const { return components_; }

private:
    int fine_edge_;
    std::vector<std::set<int>> components_;
};

// A theorem the implementation relies on failed to hold at runtime.
// Always indicates a bug, never a property of the input.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

// Final exact comparison of the assembled products failed.
class VerificationFailure : public Error {
public:
    VerificationFailure(int row, int col)
        : Error("product mismatch first differs at (" + std::to_string(row) +
                ", " + std::to_string(col) + ")"),
          row_(row),
          col_(col) {}

    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_;
    int col_;
};

// Brute-force oracle refused an instance above its size bound.
class SizeLimit : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace comprol
