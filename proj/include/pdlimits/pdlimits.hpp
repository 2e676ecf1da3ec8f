#pragma once

// Umbrella header.

#include "pdlimits/acceptance.hpp"
#include "pdlimits/asymptotics.hpp"
#include "pdlimits/dickman.hpp"
#include "pdlimits/enumerate.hpp"
#include "pdlimits/families.hpp"
#include "pdlimits/function_table.hpp"
#include "pdlimits/intensity.hpp"
#include "pdlimits/io.hpp"
#include "pdlimits/moments.hpp"
#include "pdlimits/multiprec.hpp"
#include "pdlimits/parallel.hpp"
#include "pdlimits/pd_density.hpp"
#include "pdlimits/primes.hpp"
#include "pdlimits/quadrature.hpp"
#include "pdlimits/rng.hpp"
#include "pdlimits/sampler.hpp"
#include "pdlimits/series.hpp"
#include "pdlimits/special.hpp"
#include "pdlimits/stats.hpp"
#include "pdlimits/stick_breaking.hpp"
#include "pdlimits/types.hpp"
