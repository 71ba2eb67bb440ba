#pragma once

#include "permtopo/error.hpp"
#include "permtopo/integer.hpp"
#include "permtopo/permutation.hpp"
#include "permtopo/poset.hpp"
#include "permtopo/pattern_poset.hpp"
#include "permtopo/mobius.hpp"
#include "permtopo/disconnect.hpp"
#include "permtopo/subword.hpp"
#include "permtopo/topology.hpp"
#include "permtopo/parallel.hpp"
#include "permtopo/scan.hpp"
#include "permtopo/fixtures.hpp"
