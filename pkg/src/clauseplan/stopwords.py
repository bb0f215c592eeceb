"""Embedded English stopword list, versioned in-repo for reproducibility."""

STOPWORDS = frozenset("""
a about above after again against all am an and any are aren as at be because
been before being below between both but by can cannot could couldn did didn
do does doesn doing don down during each either few for from further had hadn
has hasn have haven having he her here hers herself him himself his how i if
in into is isn it its itself just let ll may me might mightn more most mustn
my myself neither no nor not now of off on once only onto or other ought our
ours ourselves out over own re same shall shan she should shouldn so some
such than that the their theirs them themselves then there therefore these
they this those through thus to too under until unto up upon us very was wasn
we were weren what when where whether which while who whom why will with won
would wouldn you your yours yourself yourselves via per also among amongst
although however moreover nevertheless nonetheless otherwise within without
herein hereof hereto hereby hereunder thereof thereto thereby thereunder
therein whereof wherein whereas anyone anything everyone everything someone
something nothing none one two three first second else ever never always
often soon still yet already even much many less least own same such unless
since till toward towards across along around behind beside besides beyond
despite except inside outside near above etc
""".split())
