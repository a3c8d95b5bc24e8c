#pragma once

#include "biposs/bases.hpp"
#include "biposs/comparative.hpp"
#include "biposs/conditioning.hpp"
#include "biposs/degree.hpp"
#include "biposs/diagnosis.hpp"
#include "biposs/distribution.hpp"
#include "biposs/errors.hpp"
#include "biposs/io.hpp"
#include "biposs/logic.hpp"
#include "biposs/network.hpp"
