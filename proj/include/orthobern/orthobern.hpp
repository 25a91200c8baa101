#pragma once

#include "basis.hpp"
#include "errors.hpp"
#include "exact.hpp"
#include "fit.hpp"
#include "quadrature.hpp"
#include "testfns.hpp"
#include "verify.hpp"
