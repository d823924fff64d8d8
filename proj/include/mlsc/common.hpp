#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlsc {

// Thrown for arguments that violate an operation's contract.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a dense-path size guard is exceeded.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown for malformed text input; carries the 1-based line number.
struct parse_error : std::runtime_error {
  parse_error(long line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line(line) {}
  long line;
};

// Thrown when an orthonormal basis has too few columns for the requested rank.
struct rank_deficiency_error : std::runtime_error {
  explicit rank_deficiency_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Dense row-major matrix. Row i occupies data[i*cols .. i*cols+cols).
struct Matrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::int64_t r, std::int64_t c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(std::int64_t i, std::int64_t j) {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  double operator()(std::int64_t i, std::int64_t j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
  double* row(std::int64_t i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(std::int64_t i) const {
    return data.data() + static_cast<std::size_t>(i) * cols;
  }
};

// Dense column-major matrix; used where whole columns are the unit of work
// (orthonormalization). Column j occupies data[j*rows .. j*rows+rows).
struct ColMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<double> data;

  ColMatrix() = default;
  ColMatrix(std::int64_t r, std::int64_t c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double* col(std::int64_t j) { return data.data() + static_cast<std::size_t>(j) * rows; }
  const double* col(std::int64_t j) const {
    return data.data() + static_cast<std::size_t>(j) * rows;
  }
  double& operator()(std::int64_t i, std::int64_t j) {
    return data[static_cast<std::size_t>(j) * rows + i];
  }
  double operator()(std::int64_t i, std::int64_t j) const {
    return data[static_cast<std::size_t>(j) * rows + i];
  }
};

}  // namespace mlsc
