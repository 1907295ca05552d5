#pragma once

#include "projconst/bukhcox.hpp"
#include "projconst/errors.hpp"
#include "projconst/etf.hpp"
#include "projconst/frames.hpp"
#include "projconst/io.hpp"
#include "projconst/json.hpp"
#include "projconst/matrix.hpp"
#include "projconst/projection_constants.hpp"
#include "projconst/rational.hpp"
#include "projconst/replication.hpp"
#include "projconst/version.hpp"
