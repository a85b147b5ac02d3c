#ifndef AJSCC_AJSCC_HPP
#define AJSCC_AJSCC_HPP

#include "ajscc/channel.hpp"
#include "ajscc/circuit.hpp"
#include "ajscc/errors.hpp"
#include "ajscc/experiments.hpp"
#include "ajscc/io.hpp"
#include "ajscc/mapping.hpp"
#include "ajscc/power_cost.hpp"
#include "ajscc/run_config.hpp"

#endif  // AJSCC_AJSCC_HPP
