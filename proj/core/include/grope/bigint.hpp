#pragma once

#include <gmpxx.h>

namespace grope {

using BigInt = mpz_class;

}  // namespace grope
