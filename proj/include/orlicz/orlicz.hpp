#pragma once

// Everything except io.hpp, which pulls in nlohmann/json.
#include "orlicz/error.hpp"
#include "orlicz/objective.hpp"
#include "orlicz/objectives.hpp"
#include "orlicz/oracle.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/perturbation.hpp"
#include "orlicz/sampling.hpp"
#include "orlicz/sequence.hpp"
#include "orlicz/smoothness.hpp"
#include "orlicz/weights.hpp"
#include "orlicz/wellposedness.hpp"
