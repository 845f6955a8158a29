#ifndef SYMCHAB_SYMCHAB_HPP
#define SYMCHAB_SYMCHAB_HPP

#include "chabauty.hpp"
#include "curve.hpp"
#include "finite_field.hpp"
#include "intersect.hpp"
#include "json_io.hpp"
#include "lp.hpp"
#include "polytope.hpp"
#include "pure.hpp"
#include "series.hpp"
#include "tropical.hpp"
#include "valuation.hpp"

#endif // SYMCHAB_SYMCHAB_HPP
