#pragma once

#include "convexsec/curve.hpp"
#include "convexsec/detector.hpp"
#include "convexsec/error.hpp"
#include "convexsec/expression.hpp"
#include "convexsec/frame.hpp"
#include "convexsec/jet.hpp"
#include "convexsec/limits.hpp"
#include "convexsec/quadrature.hpp"
#include "convexsec/roots.hpp"
#include "convexsec/section.hpp"
