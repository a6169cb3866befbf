#pragma once

#include "concentration.hpp"
#include "dist.hpp"
#include "error.hpp"
#include "extremal.hpp"
#include "format.hpp"
#include "simulate.hpp"
#include "variance.hpp"
