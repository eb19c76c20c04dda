#pragma once

#include "darboux/specfun/airy.hpp"
#include "darboux/specfun/bessel.hpp"
#include "darboux/specfun/gamma.hpp"
#include "darboux/specfun/hyp2f1.hpp"
#include "darboux/specfun/jacobi.hpp"
