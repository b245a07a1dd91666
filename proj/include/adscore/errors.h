#pragma once

#include <stdexcept>
#include <string>

namespace adscore {

// Malformed auction instance, profile, or model parameters.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A query outside the valid range (rank, advertiser index, missing neighbour).
class QueryError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A click-through-rate model cannot answer a query (e.g. table miss).
class CtrModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its hypothesis (e.g. N <= S where N > S is
// required, or a factorial enumeration that is too large).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace adscore
