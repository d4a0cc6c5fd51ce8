#!/usr/bin/env python3
"""Regenerate src/qoerep/data/pos_lexicon.tsv.

The lexicon is a static coarse-tag dictionary of common English surface
forms.  Base forms are listed by hand below; plurals and verb inflections
are derived with regular English rules plus an irregular table.  A word
that appears in several lists gets the union of tags.

    python tools/build_pos_lexicon.py > src/qoerep/data/pos_lexicon.tsv
"""

from __future__ import annotations

import sys
from collections import defaultdict

NOUNS = """
ability access account action activity address admin administrator advantage advice
age agency agent agreement air airport alarm alert algorithm alternative amount analysis
analytics animal answer api app apple application approach architecture area argument
arm army art article artifact aspect asset assistance attack attempt attention attitude
audience audit author authority authentication authorization automation availability
average award baby back background backend backup balance ball bandwidth bank bar base
basis battle bed benefit bill billing bit blob block blog board boat body book boot
border bottleneck bottom box boy brain branch brand bread break breakfast bridge
browser budget buffer bug bucket building business button buyer cache call camera
campaign candidate capability capacity car card care career case cash cat catalog
category cause cell center certificate chain chair challenge chance change channel
chapter character charge chart chat check checkout chicken child choice church
circle citizen city claim class client climate clock cloud cluster coach code
collection college color column comment commit committee communication community
company comparison competition competitor complaint component computer concept
concern condition conference confidence configuration connection console consumer
contact container content context contract control conversation cost country county
couple course court cpu crash credit crew crime crisis criterion culture cup
customer customization cycle dashboard data database date daughter day deadline deal
death debt decade decision default defect degree delay delivery demand demo department
dependency deployment design desk detail developer development device difference
dinner direction director disaster discount discussion disease disk display distance
doc doctor document documentation dog dollar domain door downtime draft dream dress
drink driver drop duration duty ear earth economy edge editor education effect effort
egg election element email emergency employee end endpoint energy engine engineer
engineering enterprise entry environment equipment error estimate evening event
evidence exam example exception expense experience expert eye face fact factor
failure family fan farm father fault favor fear feature fee feedback field figure
file film finding fire firewall firm fish flag flexibility floor flow focus food foot
force forecast form format foundation frame framework freedom friend front frontend
fun function fund future game gap garden gateway gear generation gift girl goal
government grade graph ground group growth guest guide gun guy hair half hall hand
handler hardware head headache health heart heat help history hit holiday home hook
hope horse hospital host hosting hotel hour house human idea identity image impact
improvement incident income increase index individual industry information
infrastructure input insight instance institution integration interest interface
internet interview investment invoice issue item job journey judge key kid kind
kitchen knowledge lab lack lag lake land language laptop latency launch law lawyer
layer leader learning lesson letter level library license life light limit line link
list load location lock log login look loss lot love machine magazine mail
maintenance majority management manager map market marketing match material matter
meal measure measurement media medicine meeting member memory message method metric
middle migration mile military mind minute mistake mobile mode model moment money
monitor monitoring month morning mother motor mountain mouth movie music name nation
nature need network news newspaper night node noise note notification number object
occasion offer office officer oil onboarding operation operator opinion opportunity
option order organization outage outcome output owner package page pain pair panel
paper parent park part partner party password patch path patient pattern payment
peace peak people percent performance period permission person perspective phase
phone photo piece pipeline place plan plane planet plant platform player plugin
point police policy pool population portal position post potential pound power
practice preference presence president pressure price pricing principle priority
problem procedure process processor product production professional profile profit
program progress project property proposal protection protocol provider proxy public
purchase purpose quality quantity quarter query question queue quota radio range rate
ratio reaction reader reality reason record recovery reference refund region
registry regret relation relationship release reliability replacement replica report
repository reputation request requirement research resource response responsibility
rest result retry return revenue review reward right risk road rock role room root
route router row rule runtime safety salary sale sample satisfaction scale
scalability scene schedule scheme schema school science scope score screen script
sdk search season seat second secret section sector security seller sense sensor
sequence server service session setting setup share shard shift shop side sign signal
site situation size skill sky snapshot society software solution son song sort
source space speaker speed spend spot spring staff stage standard star start state
statement station status step stock storage store story strategy stream street
strength stress structure student studio study style subject subscription success
suggestion summer sun supplier support surface surprise system table tag talent
target task tax teacher team technology telephone template term test testing text
thanks theory thing thought threat throughput ticket time timeout title today token
tool top topic total tour town track trade traffic training transaction transfer
travel tree trend trial trigger trip trouble truck trust truth tutorial type unit
university update upgrade uptime usage user vacation validation value variable
variety vendor version video view village virtue visit voice volume vote wall war
warning waste water way weakness weather web website week weekend weight wheel while
wife wind window winter woman word work worker workflow workload world writer year
youth zone
nightmare disaster delight praise joy pleasure frustration annoyance disappointment
hassle mess glitch hiccup lifesaver gem winner charm breeze
"""

# nouns with irregular or identical plurals; listed surface forms only
NOUN_FORMS = """
people children men women feet teeth mice data media criteria analyses
news series species aircraft software hardware information equipment feedback
"""

ADJECTIVES = """
able abstract acceptable accessible accurate active actual additional adequate
advanced affordable afraid agile alive amazing annoying anonymous apparent
appropriate asynchronous attractive automatic available average awesome awful
awkward bad basic beautiful best better big bitter blank blind blue bold boring
brave brief bright brilliant broad broken brown buggy busy calm capable careful
careless central certain cheap cheaper cheapest clean clear clever close clunky
cold comfortable common compatible competent competitive complete complex
complicated comprehensive confident confusing consistent constant convenient cool
correct costly crazy critical crucial cumbersome curious current custom cute daily
dangerous dark dead dear decent dedicated deep default delightful dependable
detailed different difficult digital direct dirty disappointing distributed dreadful
dry due dull durable dynamic eager early easy easier easiest economic effective
efficient elastic elegant electric empty encrypted endless enormous entire
environmental equal essential eternal even evident exact excellent exceptional
excessive excited exciting existing expensive experienced expert external extra
extreme fair faithful false familiar famous fancy fantastic far fast faster fastest
fat faulty favorite federal few final fine firm first flaky flat flawless flexible
foreign formal former fortunate free frequent fresh friendly frustrating full
functional fundamental funny future general generous gentle genuine global glad
golden good gorgeous grand grateful great greater greatest green gross guilty happy
hard harmful healthy heavy helpful helpless hidden high higher highest historical
honest horrible hot huge human hungry ideal identical idle illegal immediate immense
important impossible impressive inadequate incompetent incomplete inconsistent
incorrect incredible independent individual industrial inefficient inexpensive
infinite informal initial inner innocent insecure instant intelligent intense
internal international intuitive invalid invisible irrelevant jealous joint junior
key kind known laggy large larger largest last late latest lazy legal legitimate
lengthy less light likely limited little live local logical lonely long longer
lousy low lower loyal lucky mad magnificent main major managed manual marvelous
massive maximum mean mediocre medium mental mere messy mild military minimal minimum
minor misleading missing mobile modern modest monthly moral multiple mutual narrow
national native natural near neat necessary negative nervous neutral new nice noble
noisy normal notable novel numerous obvious odd official okay old open operational
optimal optional ordinary organic original outdated outstanding overall overpriced
painful painless pathetic patient peaceful perfect permanent personal physical
plain pleasant pleased plenty poor popular portable positive possible potential
powerful practical precious precise predictable pregnant premium present pretty
previous primary prime principal prior private proactive productive professional
profitable prompt proper proud public pure quick quiet random rapid rare raw ready
real realistic reasonable recent redundant regional regular relevant reliable
remarkable remote repetitive reputable resilient responsive restrictive rich right
rigid robust rough round rude sad safe satisfied scalable scary scientific seamless
secondary secret secure senior sensitive separate serious serverless severe shallow
sharp short sick significant silent silly similar simple sincere single slight slim
slow sluggish small smart smooth social soft solid sophisticated sore sorry sound
sparse special specific speedy spectacular stable stale standard static steady
steep sticky stiff strange strict strong stupid subtle successful sudden sufficient
suitable super superb superior supportive sure surprising suspicious sweet
synchronous technical temporary terrible terrific thankful thick thin thorough tidy
tight tiny tired top total tough toxic traditional transparent tremendous tricky
trivial true trustworthy typical ugly ultimate unable unacceptable unavailable
unclear uncomfortable underlying unexpected unfair unfortunate unhappy unhelpful
unique unknown unlimited unnecessary unpredictable unreliable unresponsive unsafe
unstable unusual upset urgent usable useful useless usual valid valuable various
vast verbose vibrant viable visible vital vulnerable warm weak wealthy weekly weird
welcome wet white whole wide wild willing wise wonderful wooden worried worse worst
worth worthless worthy wrong young
"""

VERBS = """
accept access achieve acquire act adapt add adjust admit adopt advise affect agree
aim allocate allow alter analyze announce answer appear apply appreciate approach
approve argue arrange arrive ask assign assist assume attach attempt attend attract
authenticate automate avoid back bake balance ban bear beat become beg begin behave
believe belong benefit bet bill bind bite blame block blow boost borrow bother
bounce break breathe bring browse build burn buy calculate call cancel care carry
cast catch cause cease celebrate change charge chase chat check choose claim clean
clear click climb close collect combine come comment commit communicate compare
compete complain complete compile compute concern conclude configure confirm
confuse connect consider consist consume contact contain continue contribute control
convert convince cook copy correct cost count cover crash create cross cry cut
damage dance deal debug decide declare decline decrease define delay delete deliver
demand deny depend deploy describe deserve design destroy detect determine develop
die differ disable disagree disappear disappoint discover discuss dislike display
distribute divide do download drag draw dream dress drink drive drop dump earn eat
edit eliminate emerge emphasize employ enable encourage encrypt end enhance enjoy
ensure enter escape establish estimate evaluate examine exceed exchange exist expand
expect experience explain explore export expose express extend fail fall feed feel
fetch fight figure fill find finish fit fix flip float flow fly focus fold follow
forget forgive form freeze frustrate gain gather generate get give go grab grant grow
guarantee guess handle hang happen hate have head hear help hide hire hit hold hope
host hurt identify ignore illustrate imagine impact implement imply import impress
improve include increase indicate influence inform inherit initialize insist inspect
install integrate intend introduce invest investigate invite invoke involve iterate
join judge jump justify keep kick kill knock know lack land last launch lay lead
lean learn leave lend let lie like limit link listen live load locate lock log look
lose love maintain make manage mark marry match matter mean measure meet mention
merge migrate mind miss mix monitor move multiply name need negotiate note notice
notify obtain occur offer open operate optimize order organize overcome overlook owe
own pack paint park parse participate pass pay perform persist pick place plan play
point poll possess post pour practice praise pray predict prefer prepare present
preserve press prevent print proceed process produce program promise promote
propose protect prove provide provision publish pull purchase push put qualify query
question quit raise reach react read realize receive recognize recommend record
recover reduce refer reflect refresh refuse regret reject relate release rely
remain remember remind remove render renew rent repair repeat replace reply report
represent request require rescue reserve reset resize resolve respond rest restart
restore restrict retain retry return reveal review reward ride ring rise risk roll
rotate route ruin run rush satisfy save say scale scan schedule score scroll search
secure see seek seem select sell send separate serve set settle shake shape share
shift ship shoot shop show shrink shut sign sing sink sit sleep slip solve sort
sound speak specify spend split spread stand start state stay steal stick stop
store stream strike struggle study submit succeed suck suffer suggest suit supply
support suppose surprise survive suspect swap swear switch sync take talk target
teach tell tend test thank think threaten throw tie tolerate touch track trade train
transfer transform translate travel treat trigger trust try turn type undergo
understand undo unlock update upgrade upload urge use validate value vary verify
view visit vote wait wake walk want warn wash watch waste wear win wish wonder work
worry wrap write yield
amaze annoy please satisfy impress delight disappoint frustrate confuse bore excite
"""

IRREGULAR_VERBS = {
    "be": "is are was were been being am",
    "have": "has had having",
    "do": "does did done doing",
    "go": "goes went gone going",
    "get": "gets got gotten getting",
    "make": "makes made making",
    "take": "takes took taken taking",
    "come": "comes came coming",
    "become": "becomes became becoming",
    "give": "gives gave given giving",
    "know": "knows knew known knowing",
    "see": "sees saw seen seeing",
    "think": "thinks thought thinking",
    "find": "finds found finding",
    "tell": "tells told telling",
    "say": "says said saying",
    "pay": "pays paid paying",
    "buy": "buys bought buying",
    "bring": "brings brought bringing",
    "build": "builds built building",
    "break": "breaks broke broken breaking",
    "choose": "chooses chose chosen choosing",
    "drive": "drives drove driven driving",
    "write": "writes wrote written writing",
    "run": "runs ran running",
    "begin": "begins began begun beginning",
    "feel": "feels felt feeling",
    "keep": "keeps kept keeping",
    "leave": "leaves left leaving",
    "lose": "loses lost losing",
    "mean": "means meant meaning",
    "meet": "meets met meeting",
    "send": "sends sent sending",
    "spend": "spends spent spending",
    "stand": "stands stood standing",
    "understand": "understands understood understanding",
    "sell": "sells sold selling",
    "hold": "holds held holding",
    "lead": "leads led leading",
    "read": "reads reading",
    "set": "sets setting",
    "put": "puts putting",
    "cut": "cuts cutting",
    "let": "lets letting",
    "hit": "hits hitting",
    "cost": "costs costing",
    "quit": "quits quitting",
    "shut": "shuts shutting",
    "split": "splits splitting",
    "bet": "bets betting",
    "fall": "falls fell fallen falling",
    "fly": "flies flew flown flying",
    "grow": "grows grew grown growing",
    "throw": "throws threw thrown throwing",
    "draw": "draws drew drawn drawing",
    "eat": "eats ate eaten eating",
    "drink": "drinks drank drunk drinking",
    "sing": "sings sang sung singing",
    "sink": "sinks sank sunk sinking",
    "ring": "rings rang rung ringing",
    "swear": "swears swore sworn swearing",
    "wear": "wears wore worn wearing",
    "tear": "tears tore torn tearing",
    "bear": "bears bore borne bearing",
    "freeze": "freezes froze frozen freezing",
    "steal": "steals stole stolen stealing",
    "speak": "speaks spoke spoken speaking",
    "wake": "wakes woke woken waking",
    "forget": "forgets forgot forgotten forgetting",
    "forgive": "forgives forgave forgiven forgiving",
    "hide": "hides hid hidden hiding",
    "bite": "bites bit bitten biting",
    "ride": "rides rode ridden riding",
    "rise": "rises rose risen rising",
    "shake": "shakes shook shaken shaking",
    "undergo": "undergoes underwent undergone undergoing",
    "overcome": "overcomes overcame overcoming",
    "teach": "teaches taught teaching",
    "catch": "catches caught catching",
    "seek": "seeks sought seeking",
    "fight": "fights fought fighting",
    "sleep": "sleeps slept sleeping",
    "sit": "sits sat sitting",
    "shoot": "shoots shot shooting",
    "strike": "strikes struck striking",
    "stick": "sticks stuck sticking",
    "hang": "hangs hung hanging",
    "lend": "lends lent lending",
    "bind": "binds bound binding",
    "shrink": "shrinks shrank shrunk shrinking",
    "lie": "lies lay lain lying",
    "lay": "lays laid laying",
    "die": "dies died dying",
    "tie": "ties tied tying",
    "dump": "dumps dumped dumping",
    "win": "wins won winning",
    "swap": "swaps swapped swapping",
    "ship": "ships shipped shipping",
    "drop": "drops dropped dropping",
    "stop": "stops stopped stopping",
    "plan": "plans planned planning",
    "shop": "shops shopped shopping",
    "grab": "grabs grabbed grabbing",
    "drag": "drags dragged dragging",
    "flip": "flips flipped flipping",
    "slip": "slips slipped slipping",
    "beg": "begs begged begging",
    "ban": "bans banned banning",
    "commit": "commits committed committing",
    "admit": "admits admitted admitting",
    "submit": "submits submitted submitting",
    "debug": "debugs debugged debugging",
    "occur": "occurs occurred occurring",
    "refer": "refers referred referring",
    "prefer": "prefers preferred preferring",
    "regret": "regrets regretted regretting",
    "program": "programs programmed programming",
    "log": "logs logged logging",
    "rely": "relies relied relying",
    "lean": "leans leaned leaning",
}

ADVERBS = """
about above absolutely actually again ago ahead almost alone already also altogether
always anyhow anymore anyway anywhere apart approximately around aside away back
badly barely basically beautifully best better brilliantly briefly carefully
certainly cheaply clearly closely commonly completely consistently constantly
correctly currently daily deeply definitely deliberately directly down easily
effectively efficiently else elsewhere enough entirely equally especially essentially
even eventually ever everywhere exactly extremely fairly far fast finally firmly
forever formerly forth fortunately frankly freely frequently fully further generally
gently genuinely gladly greatly hardly heavily here highly honestly hopefully
however immediately increasingly indeed initially instantly instead just largely
lately later least less likely literally little long loosely loudly luckily mainly
maybe merely mostly much naturally nearly neatly necessarily never nevertheless
newly nicely normally notably now nowhere obviously occasionally often once only
openly originally otherwise outside overnight particularly partly perfectly perhaps
personally poorly possibly practically precisely presumably pretty previously
primarily probably promptly properly quickly quietly quite randomly rapidly rarely
rather readily really reasonably recently regularly relatively reliably remarkably
repeatedly roughly sadly safely seamlessly seldom seriously severely shortly
significantly similarly simply since slightly slowly smoothly so sometimes somewhat
somewhere soon specifically steadily still strictly strongly subsequently suddenly
supposedly surely surprisingly terribly thankfully then there thereby therefore
thoroughly though thus today together tomorrow tonight too totally truly typically
ultimately unfortunately usually very virtually well wholly widely wildly yesterday
yet
"""

OTHER = """
a an the this that these those each every either neither some any no all both few
many much several such what which who whom whose whatever whichever whoever
i me my mine myself we us our ours ourselves you your yours yourself yourselves he
him his himself she her hers herself it its itself they them their theirs themselves
one two three four five six seven eight nine ten hundred thousand million
and or but nor yet so if because although though unless while whereas since until
whether than as
of at by for with about against between into through during before after above
below to from up down in out on off over under around across along among behind
beside beyond near onto toward towards upon within without via per
can could may might must shall should will would
not yes oh hey wow ok ugh hi hello please thanks
"""


def plural(noun: str) -> str:
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    if noun.endswith("y") and noun[-2:-1] not in "aeiou":
        return noun[:-1] + "ies"
    return noun + "s"


def verb_forms(verb: str) -> list[str]:
    if verb in IRREGULAR_VERBS:
        return IRREGULAR_VERBS[verb].split()
    if verb.endswith(("s", "x", "z", "ch", "sh")) or verb.endswith("o"):
        third = verb + "es"
    elif verb.endswith("y") and verb[-2] not in "aeiou":
        third = verb[:-1] + "ies"
    else:
        third = verb + "s"
    if verb.endswith("e"):
        past, ing = verb + "d", verb[:-1] + "ing"
        if verb.endswith(("ee", "ye", "oe")):
            ing = verb + "ing"
    elif verb.endswith("y") and verb[-2] not in "aeiou":
        past, ing = verb[:-1] + "ied", verb + "ing"
    else:
        past, ing = verb + "ed", verb + "ing"
    return [third, past, ing]


def build() -> dict[str, set[str]]:
    tags: dict[str, set[str]] = defaultdict(set)
    for w in NOUNS.split():
        tags[w].add("noun")
        tags[plural(w)].add("noun")
    for w in NOUN_FORMS.split():
        tags[w].add("noun")
    for w in ADJECTIVES.split():
        tags[w].add("adjective")
    for w in VERBS.split():
        tags[w].add("verb")
        for form in verb_forms(w):
            tags[form].add("verb")
    for w in IRREGULAR_VERBS:
        tags[w].add("verb")
        for form in IRREGULAR_VERBS[w].split():
            tags[form].add("verb")
    for w in ADVERBS.split():
        tags[w].add("adverb")
    for w in OTHER.split():
        tags[w].add("other")
    return tags


TAG_ORDER = ("noun", "adjective", "verb", "adverb", "other")


def main() -> None:
    tags = build()
    out = sys.stdout
    out.write("# Coarse part-of-speech lexicon: word<TAB>tag[,tag...]\n")
    out.write("# Generated by tools/build_pos_lexicon.py; do not edit by hand.\n")
    for word in sorted(tags):
        ordered = [t for t in TAG_ORDER if t in tags[word]]
        out.write(f"{word}\t{','.join(ordered)}\n")


if __name__ == "__main__":
    main()
