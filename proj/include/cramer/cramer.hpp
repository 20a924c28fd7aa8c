#ifndef CRAMER_CRAMER_HPP
#define CRAMER_CRAMER_HPP

#include "cramer/config.hpp"
#include "cramer/core.hpp"
#include "cramer/exact.hpp"
#include "cramer/io.hpp"
#include "cramer/ldp.hpp"
#include "cramer/legendre.hpp"
#include "cramer/variational.hpp"
#include "cramer/verify.hpp"

#endif
