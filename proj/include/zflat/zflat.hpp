#pragma once

#include "zflat/branch_decomposition.hpp"
#include "zflat/branchwidth.hpp"
#include "zflat/catalog.hpp"
#include "zflat/configuration.hpp"
#include "zflat/connectivity.hpp"
#include "zflat/errors.hpp"
#include "zflat/expansion.hpp"
#include "zflat/ground_set.hpp"
#include "zflat/matroid.hpp"
#include "zflat/matroid_union.hpp"
#include "zflat/positroid.hpp"
#include "zflat/random.hpp"
#include "zflat/structure.hpp"
#include "zflat/subset.hpp"
#include "zflat/tangle.hpp"
#include "zflat/tutte.hpp"
