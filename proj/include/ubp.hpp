#ifndef UBP_HPP_
#define UBP_HPP_

#include "ubp/bigint.hpp"
#include "ubp/diagrams.hpp"
#include "ubp/exception.hpp"
#include "ubp/order.hpp"
#include "ubp/partitions.hpp"
#include "ubp/permutation.hpp"
#include "ubp/repdims.hpp"
#include "ubp/submonoids.hpp"

#endif  // UBP_HPP_
