#pragma once

#include <stdexcept>
#include <string>

namespace bbq {

// Malformed or inconsistent input data (CSV rows, labels, counts).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine could not produce a usable result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bbq
