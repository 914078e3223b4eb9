#pragma once

#include "fewpal/word.hpp"
#include "fewpal/rational.hpp"
#include "fewpal/repetition.hpp"
#include "fewpal/morphism.hpp"
#include "fewpal/known_words.hpp"
#include "fewpal/search.hpp"
#include "fewpal/transfer.hpp"
#include "fewpal/rauzy.hpp"
#include "fewpal/preimage.hpp"
#include "fewpal/suffix_array.hpp"
#include "fewpal/structure.hpp"
#include "fewpal/cubic.hpp"
#include "fewpal/certificate.hpp"
#include "fewpal/tasks.hpp"
#include "fewpal/acceptance.hpp"
