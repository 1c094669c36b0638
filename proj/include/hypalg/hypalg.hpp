#pragma once

// Convenience umbrella: the whole library.

#include "hypalg/bracket.hpp"
#include "hypalg/factorial.hpp"
#include "hypalg/geometry.hpp"
#include "hypalg/json_io.hpp"
#include "hypalg/linalg.hpp"
#include "hypalg/logseries.hpp"
#include "hypalg/rational.hpp"
#include "hypalg/relations.hpp"
#include "hypalg/series.hpp"
#include "hypalg/vec.hpp"
