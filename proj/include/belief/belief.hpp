#pragma once

// Umbrella header for the library.

#include "belief/bayes.hpp"
#include "belief/dempster.hpp"
#include "belief/error.hpp"
#include "belief/evidence.hpp"
#include "belief/frame.hpp"
#include "belief/mass.hpp"
#include "belief/model_io.hpp"
#include "belief/rational.hpp"
#include "belief/report.hpp"
