import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lexkit.inflect import InflectionParadigm, InflectionRule, ParadigmSet
from lexkit.model import FeatureAssignment

GAME_LEMMA_XML = b"""<dic>
<entry>
  <lemma>game</lemma>
  <pos name='noun'/>
  <f name='reliability' value='1'/>
  <inflection paradigm='N1'/>
</entry>
</dic>
"""

GAME_MIXED_XML = b"""<dic>
<entry>
  <lemma>game</lemma>
  <pos name='noun'/>
  <f name='reliability' value='1'/>
  <inflected>
    <form>game</form>
    <f name='number' value='singular'/>
  </inflected>
  <inflected>
    <form>games</form>
    <f name='number' value='plural'/>
  </inflected>
</entry>
</dic>
"""

GAME_WORDFORM_XML = b"""<dic>
  <entry>
    <form>game</form>
    <lemma>game</lemma>
    <pos name='noun' />
    <f name='reliability' value='1' />
    <f name='number' value='singular' />
  </entry>
  <entry>
    <form>games</form>
    <lemma>game</lemma>
    <pos name='noun' />
    <f name='reliability' value='1' />
    <f name='number' value='plural' />
  </entry>
</dic>
"""

N1_PARADIGM_TEXT = """# regular nouns
PARADIGM N1
strip=0 append= number=singular
strip=0 append=s number=plural

PARADIGM N-y
strip=0 append= number=singular
strip=1 append=ies number=plural
"""


@pytest.fixture
def game_lemma_xml() -> bytes:
    return GAME_LEMMA_XML


@pytest.fixture
def game_mixed_xml() -> bytes:
    return GAME_MIXED_XML


@pytest.fixture
def game_wordform_xml() -> bytes:
    return GAME_WORDFORM_XML


@pytest.fixture
def n1_paradigms() -> ParadigmSet:
    singular = (FeatureAssignment("number", "singular"),)
    plural = (FeatureAssignment("number", "plural"),)
    return ParadigmSet.of(
        InflectionParadigm("N1", (InflectionRule(0, "", singular), InflectionRule(0, "s", plural))),
        InflectionParadigm(
            "N-y", (InflectionRule(0, "", singular), InflectionRule(1, "ies", plural))
        ),
    )


@pytest.fixture
def n1_paradigm_text() -> str:
    return N1_PARADIGM_TEXT
