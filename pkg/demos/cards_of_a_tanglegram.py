"""
Cards of a tanglegram
=====================

Delete each matched pair of a size-5 tanglegram in turn and collect the
cards.  Two deletions give the same card twice, so the multideck has three
distinct entries with multiplicities 2, 1 and 2.
"""

from tanglegrams import format_multideck, format_tanglegram, parse_tanglegram, tanglegram_multideck

t = parse_tanglegram("((1,(2,3)),(4,5)) | (1,(2,(5,(3,4)))) | id")
print("canonical:", format_tanglegram(t))
print("labelled: ", format_tanglegram(t, "labels"))

d = tanglegram_multideck(t)
print(format_multideck(d, "labels"))

# swapping the two sides gives a different tanglegram
print(t.mirror() == t)
