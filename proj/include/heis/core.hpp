#pragma once

#include "heis/core/continuous.hpp"
#include "heis/core/element.hpp"
#include "heis/core/element_table.hpp"
#include "heis/core/error.hpp"
#include "heis/core/parallel.hpp"
#include "heis/core/rng.hpp"
