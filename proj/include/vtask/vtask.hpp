#pragma once

#include "vtask/bitset.hpp"
#include "vtask/core_model.hpp"
#include "vtask/encoder.hpp"
#include "vtask/error.hpp"
#include "vtask/format.hpp"
#include "vtask/search.hpp"
#include "vtask/task_policy.hpp"
