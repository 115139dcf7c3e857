#pragma once

// Convenience include for the whole library.

#include "seedpa/bitvec.hpp"
#include "seedpa/bounds.hpp"
#include "seedpa/config.hpp"
#include "seedpa/csv.hpp"
#include "seedpa/decoy_bb84.hpp"
#include "seedpa/entropy.hpp"
#include "seedpa/errors.hpp"
#include "seedpa/hashing.hpp"
#include "seedpa/io.hpp"
#include "seedpa/oracle.hpp"
