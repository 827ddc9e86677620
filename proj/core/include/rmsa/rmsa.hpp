// Copyright 2026 the rmsa authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rmsa/counting.hpp"
#include "rmsa/csv_io.hpp"
#include "rmsa/errors.hpp"
#include "rmsa/json_io.hpp"
#include "rmsa/measure.hpp"
#include "rmsa/rct.hpp"
#include "rmsa/sensitivity.hpp"
#include "rmsa/zeta.hpp"
