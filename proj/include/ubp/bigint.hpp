#ifndef UBP_BIGINT_HPP_
#define UBP_BIGINT_HPP_

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ubp {

  using BigInt = boost::multiprecision::cpp_int;

  inline BigInt factorial(unsigned n) {
    BigInt result = 1;
    for (unsigned i = 2; i <= n; ++i) {
      result *= i;
    }
    return result;
  }

  inline std::string to_string(BigInt const& x) {
    return x.str();
  }

  inline bool fits_uint64(BigInt const& x) {
    return x >= 0 && x <= std::numeric_limits<std::uint64_t>::max();
  }

}  // namespace ubp

#endif  // UBP_BIGINT_HPP_
