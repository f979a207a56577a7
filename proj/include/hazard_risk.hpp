#pragma once

#include "hazard_risk/error.hpp"
#include "hazard_risk/hazard_model.hpp"
#include "hazard_risk/probability.hpp"
#include "hazard_risk/risk.hpp"
#include "hazard_risk/sampler.hpp"
#include "hazard_risk/severity.hpp"
#include "hazard_risk/version.hpp"
