#pragma once

#include "hdg/analyze.hpp"
#include "hdg/construct.hpp"
#include "hdg/decomposition.hpp"
#include "hdg/errors.hpp"
#include "hdg/io.hpp"
#include "hdg/matching.hpp"
#include "hdg/model.hpp"
#include "hdg/montecarlo.hpp"
#include "hdg/pipeline.hpp"
#include "hdg/polytope.hpp"
#include "hdg/random.hpp"
#include "hdg/rational.hpp"
#include "hdg/realize.hpp"
#include "hdg/refine.hpp"
#include "hdg/sampling.hpp"
