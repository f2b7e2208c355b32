"""Pins Snowball French stems from the snowballstemmer package."""
import sys
import snowballstemmer

WORDS = """
chanteuses chanteuse chanteur chanteurs chanter chantait chantions chantèrent chanson chansons
festival festivals musique musiques musicien musiciennes musicales concert concerts scène scènes
électrique électriques électricité guitare guitaristes batterie batteurs rythme rythmiques
transmusicales rennes bretagne public publique publiquement spectacle spectaculaire spectateurs
continuellement rapidement heureusement généralement finalement évidemment prudemment couramment
nation nations national nationale nationalement nationalisme nationaliste nationalités
action actions activement activité activités actif active actives inactif
capable capables capacité capacités possibilité possibles impossible impossibilités
croissance croissances connaissance connaissances abondance abondances
logique logiques logiquement biologie biologies biologique idéologie
amour amoureux amoureuse amoureuses heureux heureuse heureuses dangereux dangereuse
beauté beautés liberté libertés égalité fraternité nouveauté
développement développements gouvernement gouvernements mouvement mouvements
changement changements évènement événements sentiment sentiments
créateur créatrice créatrices créateurs créations création créative créatives
jouer joueur joueurs jouaient jouons joueront jouerions jouassent jouâmes
finir finissons finissez finissent finissait finissaient finira finirent fini finie finies finis
aller allons allez allaient allait irons iraient
manger mangeons mangeait mangeaient mangerai mangeras mangera mangerons mangerez mangeront
parler parlons parlez parlent parlait parlaient parlerai parlé parlée parlés parlées parlant
voir voyons voyez voient voyait verra verront vu vue vus vues voyant
prendre prenons prenez prennent prenait prendra prendront pris prise prises
venir venons venez viennent venait viendra viendront venu venue venus venues
répondre répondons répondez répondent répondait répondu répondue
ennuyer ennuie ennuyeux ennuyeuse appuyer appuie payer paye paie
jouissance réjouissance naissance puissance
aimer aimable aimables aimablement aimée aimées
profession professionnel professionnelle professionnels professionnellement
religieux religieuse religieusement relation relations relationnel
passion passions passionné passionnée passionnant passionnante
élégance élégant élégante élégamment violence violent violente violemment
absolument vraiment lentement doucement gentiment
cri cris crier criait crié criée
ami amie amis amies amitié amical amicale amicalement
pays paysage paysages paysan paysanne
quand quoique quelque quelques quelqu'un aujourd'hui jusqu'à
l'homme d'abord qu'il s'est n'importe c'était j'aime
hôtel hôpital hôpitaux château châteaux gâteau gâteaux
oeuvre œuvre œuvres coeur cœur sœur
naïf naïve naïveté maïs égoïste
ceux cieux yeux vieux vieille vieillesse
ouvrir ouvert ouverte ouverture ouvertures
audacieux audacieuse audace tenace ténacité
anglais anglaise française français francophone
tweet tweets tweeter retweet hashtag
#festival @artiste
a à y ai au aux été êtes
éclairage éclairages reportage reportages voyage voyager voyageurs
grandissime rarissime
joyeux joyeuse joyeusement
intellectuel intellectuelle intellectuelles
pollution polluant polluante
illumination illuminations illuminé illuminée
habitude habitudes habituel habituelle habituellement
""".split()

def main(out):
    st = snowballstemmer.stemmer("french")
    seen = set()
    with open(out, "w", encoding="utf-8") as f:
        for w in WORDS:
            if w in seen:
                continue
            seen.add(w)
            f.write(f"{w}\t{st.stemWord(w)}\n")

if __name__ == "__main__":
    main(sys.argv[1])
