#pragma once

#include "bctree.hpp"
#include "blocks.hpp"
#include "dag.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "fan.hpp"
#include "gadgets.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "layout.hpp"
#include "outerpath.hpp"
#include "outerplanar.hpp"
#include "parameterized.hpp"
#include "rng.hpp"
#include "upward.hpp"
