#pragma once

#include "jury/error.h"
#include "jury/estimate.h"
#include "jury/graph.h"
#include "jury/io.h"
#include "jury/jer.h"
#include "jury/juror.h"
#include "jury/ranking.h"
#include "jury/solver.h"
#include "jury/synth.h"
