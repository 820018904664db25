#pragma once

#include "symdyn/automata.hpp"
#include "symdyn/config.hpp"
#include "symdyn/error.hpp"
#include "symdyn/io.hpp"
#include "symdyn/lattice.hpp"
#include "symdyn/lyndon.hpp"
#include "symdyn/prng.hpp"
#include "symdyn/ring.hpp"
#include "symdyn/shift.hpp"
#include "symdyn/word.hpp"
