#ifndef UBP_EXCEPTION_HPP_
#define UBP_EXCEPTION_HPP_

#include <stdexcept>
#include <string>

namespace ubp {

  enum class error_kind {
    invalid_argument,
    size_mismatch,
    not_a_partition,
    non_uniform_block,
    undefined_smallest_part,
    not_comparable,
    oracle_infeasible,
    not_a_downset,
    contains_all_ones,
    bound_exceeded,
    parse_error
  };

  inline char const* to_string(error_kind kind) noexcept {
    switch (kind) {
      case error_kind::invalid_argument:
        return "invalid argument";
      case error_kind::size_mismatch:
        return "size mismatch";
      case error_kind::not_a_partition:
        return "not a partition of [k] u [k-bar]";
      case error_kind::non_uniform_block:
        return "non-uniform block";
      case error_kind::undefined_smallest_part:
        return "smallest part > 1 undefined";
      case error_kind::not_comparable:
        return "not comparable";
      case error_kind::oracle_infeasible:
        return "oracle infeasible";
      case error_kind::not_a_downset:
        return "not a downset";
      case error_kind::contains_all_ones:
        return "contains 1^k";
      case error_kind::bound_exceeded:
        return "bound exceeded";
      case error_kind::parse_error:
        return "parse error";
    }
    return "unknown error";
  }

  class Error : public std::runtime_error {
   public:
    Error(error_kind kind, std::string const& detail)
        : std::runtime_error(std::string(to_string(kind))
                             + (detail.empty() ? "" : ": " + detail)),
          _kind(kind) {}

    error_kind kind() const noexcept {
      return _kind;
    }

   private:
    error_kind _kind;
  };

}  // namespace ubp

#endif  // UBP_EXCEPTION_HPP_
