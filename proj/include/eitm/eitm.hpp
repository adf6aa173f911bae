#pragma once

#include "eitm/core.hpp"
#include "eitm/atom_models.hpp"
#include "eitm/optical_response.hpp"
#include "eitm/statistical_speed.hpp"
#include "eitm/features.hpp"
#include "eitm/scan.hpp"
#include "eitm/presets.hpp"
#include "eitm/io.hpp"
