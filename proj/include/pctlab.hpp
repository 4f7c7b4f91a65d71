#pragma once

#include "pctlab/cases.hpp"
#include "pctlab/error.hpp"
#include "pctlab/model.hpp"
#include "pctlab/pct.hpp"
#include "pctlab/quadrature.hpp"
#include "pctlab/specfun.hpp"
#include "pctlab/spectra.hpp"
#include "pctlab/tridiag.hpp"
#include "pctlab/verify.hpp"
