"""lexkit: lexicon management and lexicon-based tagging toolkit."""

from .model import (
    ExplicitForms,
    FeatureAssignment,
    InflectedForm,
    LemmaEntry,
    Lexicon,
    LexiconError,
    ParadigmRef,
    PartOfSpeech,
    WordFormEntry,
    merge_features,
)
from .dela import DelaParseError, parse_delaf, parse_delas, write_delaf, write_delas
from .xmlio import LexiconXmlError, ValidationIssue, parse_lexicon, validate, write_lexicon
from .inflect import (
    InflectionError,
    InflectionParadigm,
    InflectionRule,
    ParadigmSet,
    apply_rule,
    expand_entry,
    expand_lexicon,
    flatten,
    parse_paradigms,
)
from .fsa import (
    CompiledLexicon,
    CompiledStats,
    IndexFormatError,
    compile,
    lookup_analyses,
    rank_lookup,
    read_binary,
    stats,
    write_binary,
)
from .annotate import (
    AnnotatedToken,
    Token,
    WordTag,
    lookup,
    read_annotated,
    tag_corpus,
    tokenize,
    write_annotated,
)
from .masks import (
    LexicalMask,
    MaskPattern,
    MaskSyntaxError,
    MatchSpan,
    mask_matches,
    parse_mask,
    parse_pattern_line,
    search,
    sequence_pattern,
)

__version__ = "0.1.0"
