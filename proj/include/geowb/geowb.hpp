#pragma once

#include "geowb/scalar.hpp"
#include "geowb/monomial.hpp"
#include "geowb/form.hpp"
#include "geowb/linalg.hpp"
#include "geowb/operators.hpp"
#include "geowb/presentation.hpp"
#include "geowb/metric.hpp"
#include "geowb/optimize.hpp"
#include "geowb/positivity.hpp"
#include "geowb/catalog.hpp"
#include "geowb/existence.hpp"
#include "geowb/io.hpp"
