#pragma once

#include <stdexcept>
#include <string>

namespace scfrl {

// Bad input data: files, schemas, domain violations, invalid configs,
// metric computations over empty inputs. Exit code 2 at the CLI.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse: dimension mismatches, out-of-range arguments, stepping a
// finished episode. Exit code 1 at the CLI.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Training produced non-finite values. Exit code 3 at the CLI.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scfrl
