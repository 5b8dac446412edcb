#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etiquette {

// Bad argument values: non-finite inputs, probabilities outside (0,1),
// parameter records violating their own invariants.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Too few samples for an estimator's floor.
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Samples carry no usable variation: all-equal data, zero spread,
// rank-deficient regression geometry.
struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file. `row` is the 1-based data row (header excluded) for
// CSV, or 0 when the location is carried in the message (JSON byte offsets).
struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t row_index = 0,
             std::string column_name = {})
      : std::runtime_error(message), row(row_index), column(std::move(column_name)) {}
  std::size_t row;
  std::string column;
};

// Persisted file declares a schema version this build does not understand.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Small-angle yaw-rate conversion invalid: leader speed at or below the floor.
struct LowSpeedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulation aborted on a safety violation; message carries the state dump.
struct CollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace etiquette
