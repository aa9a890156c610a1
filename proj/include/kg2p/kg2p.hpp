#pragma once

#include "kg2p/ccv.hpp"
#include "kg2p/error.hpp"
#include "kg2p/hangul.hpp"
#include "kg2p/lattice.hpp"
#include "kg2p/lexicon.hpp"
#include "kg2p/normalize.hpp"
#include "kg2p/phrasebreak.hpp"
#include "kg2p/pipeline.hpp"
#include "kg2p/text.hpp"
