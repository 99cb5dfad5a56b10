#pragma once

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/subspace.hpp"
#include "bollobas/systems.hpp"
#include "bollobas/verifiers.hpp"
#include "bollobas/weights.hpp"
#include "bollobas/saturation.hpp"
#include "bollobas/constructions.hpp"
#include "bollobas/search.hpp"
#include "bollobas/document.hpp"
