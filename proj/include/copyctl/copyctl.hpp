// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "copyctl/bleu.hpp"
#include "copyctl/corpus.hpp"
#include "copyctl/decoder.hpp"
#include "copyctl/errors.hpp"
#include "copyctl/lexicon.hpp"
#include "copyctl/metrics.hpp"
#include "copyctl/model.hpp"
#include "copyctl/report.hpp"
#include "copyctl/sweep.hpp"
#include "copyctl/text.hpp"
#include "copyctl/unicode.hpp"
#include "copyctl/vocab.hpp"
