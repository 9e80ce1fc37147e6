#pragma once

#include "ndqmc/bounds.hpp"
#include "ndqmc/cover.hpp"
#include "ndqmc/discrepancy.hpp"
#include "ndqmc/errors.hpp"
#include "ndqmc/negdep.hpp"
#include "ndqmc/pointset.hpp"
#include "ndqmc/rational.hpp"
#include "ndqmc/region.hpp"
#include "ndqmc/rng.hpp"
#include "ndqmc/study.hpp"
