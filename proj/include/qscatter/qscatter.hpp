#pragma once

#include "qscatter/commands.hpp"
#include "qscatter/csv.hpp"
#include "qscatter/error.hpp"
#include "qscatter/hard_sphere.hpp"
#include "qscatter/matching.hpp"
#include "qscatter/model_spec.hpp"
#include "qscatter/optical.hpp"
#include "qscatter/partial_waves.hpp"
#include "qscatter/quaternion.hpp"
#include "qscatter/special_functions.hpp"
