#pragma once

#include "qka/adversary.hpp"
#include "qka/codes.hpp"
#include "qka/countermeasure.hpp"
#include "qka/harness.hpp"
#include "qka/logical.hpp"
#include "qka/permutation.hpp"
#include "qka/protocol.hpp"
#include "qka/rng.hpp"
#include "qka/statevector.hpp"
#include "qka/stats.hpp"
#include "qka/symbolic.hpp"
#include "qka/transcript.hpp"
