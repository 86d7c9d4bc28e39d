#pragma once

#include "endlab/bottleneck.hpp"
#include "endlab/commands.hpp"
#include "endlab/config.hpp"
#include "endlab/convolution.hpp"
#include "endlab/dimension.hpp"
#include "endlab/doubling.hpp"
#include "endlab/errors.hpp"
#include "endlab/estimators.hpp"
#include "endlab/floyd.hpp"
#include "endlab/group.hpp"
#include "endlab/measure.hpp"
#include "endlab/parallel.hpp"
#include "endlab/properties.hpp"
#include "endlab/report.hpp"
#include "endlab/rng.hpp"
#include "endlab/separation.hpp"
#include "endlab/sphere.hpp"
#include "endlab/stats.hpp"
#include "endlab/tracking.hpp"
#include "endlab/tree_dimension.hpp"
#include "endlab/walk.hpp"
#include "endlab/window.hpp"
