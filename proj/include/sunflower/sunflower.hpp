#pragma once

#include "sunflower/error.hpp"
#include "sunflower/bignum.hpp"
#include "sunflower/field.hpp"
#include "sunflower/matrix.hpp"
#include "sunflower/subspace.hpp"
#include "sunflower/rank_metric.hpp"
#include "sunflower/parallel.hpp"
#include "sunflower/constructions.hpp"
#include "sunflower/verify.hpp"
#include "sunflower/serialize.hpp"
