// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "embias/assoc.hpp"
#include "embias/builtin_data.hpp"
#include "embias/debias.hpp"
#include "embias/embedding_table.hpp"
#include "embias/error.hpp"
#include "embias/fixtures.hpp"
#include "embias/lexicon.hpp"
#include "embias/report.hpp"
#include "embias/runner.hpp"
#include "embias/seat.hpp"
#include "embias/subspace.hpp"
#include "embias/unicode.hpp"
#include "embias/vector_ops.hpp"
