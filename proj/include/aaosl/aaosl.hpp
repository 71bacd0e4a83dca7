#pragma once

#include "aaosl/auth.hpp"
#include "aaosl/census.hpp"
#include "aaosl/hash.hpp"
#include "aaosl/hoprel.hpp"
#include "aaosl/log.hpp"
#include "aaosl/proofs.hpp"
#include "aaosl/types.hpp"
#include "aaosl/verify.hpp"
#include "aaosl/wire.hpp"
