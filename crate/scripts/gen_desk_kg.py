#!/usr/bin/env python3
"""Generate the desk-scale knowledge graph shipped in assets/kg.tsv.

A handful of real, well-known facts seed the file; the bulk is fictional
films, books and songs drawn from fixed word lists with a seeded RNG, so the
output is reproducible byte for byte.
"""

import random
import sys

REAL = [
    ("Inception", "director", "Christopher Nolan"),
    ("Inception", "genre", "science fiction"),
    ("Inception", "genre", "thriller"),
    ("Inception", "actor", "Leonardo DiCaprio"),
    ("Inception", "year", "2010"),
    ("Interstellar", "director", "Christopher Nolan"),
    ("Interstellar", "genre", "science fiction"),
    ("Interstellar", "actor", "Matthew McConaughey"),
    ("Interstellar", "year", "2014"),
    ("Titanic", "director", "James Cameron"),
    ("Titanic", "genre", "romance"),
    ("Titanic", "genre", "drama"),
    ("Titanic", "actor", "Leonardo DiCaprio"),
    ("Titanic", "actor", "Kate Winslet"),
    ("Titanic", "year", "1997"),
    ("Avatar", "director", "James Cameron"),
    ("Avatar", "genre", "science fiction"),
    ("Avatar", "year", "2009"),
    ("Jurassic Park", "director", "Steven Spielberg"),
    ("Jurassic Park", "genre", "adventure"),
    ("Jurassic Park", "year", "1993"),
    ("The Godfather", "director", "Francis Ford Coppola"),
    ("The Godfather", "genre", "crime"),
    ("The Godfather", "actor", "Marlon Brando"),
    ("Hamlet", "author", "William Shakespeare"),
    ("Hamlet", "genre", "tragedy"),
    ("Pride and Prejudice", "author", "Jane Austen"),
    ("Pride and Prejudice", "genre", "romance"),
    ("Nineteen Eighty Four", "author", "George Orwell"),
    ("Nineteen Eighty Four", "genre", "dystopia"),
    ("Bohemian Rhapsody", "singer", "Freddie Mercury"),
    ("Bohemian Rhapsody", "genre", "rock"),
    ("Imagine", "singer", "John Lennon"),
    ("Imagine", "genre", "pop"),
    ("Christopher Nolan", "occupation", "film director"),
    ("James Cameron", "occupation", "film director"),
]

COUNTRIES = [
    ("China", "Beijing", "Asia"), ("France", "Paris", "Europe"),
    ("Japan", "Tokyo", "Asia"), ("Germany", "Berlin", "Europe"),
    ("Italy", "Rome", "Europe"), ("Spain", "Madrid", "Europe"),
    ("Russia", "Moscow", "Europe"), ("Egypt", "Cairo", "Africa"),
    ("Canada", "Ottawa", "North America"), ("Australia", "Canberra", "Oceania"),
    ("Brazil", "Brasilia", "South America"), ("India", "New Delhi", "Asia"),
    ("Mexico", "Mexico City", "North America"), ("Kenya", "Nairobi", "Africa"),
    ("Norway", "Oslo", "Europe"), ("Sweden", "Stockholm", "Europe"),
    ("Finland", "Helsinki", "Europe"), ("Portugal", "Lisbon", "Europe"),
    ("Greece", "Athens", "Europe"), ("Austria", "Vienna", "Europe"),
    ("Thailand", "Bangkok", "Asia"), ("South Korea", "Seoul", "Asia"),
    ("Argentina", "Buenos Aires", "South America"), ("Peru", "Lima", "South America"),
    ("Chile", "Santiago", "South America"), ("Ireland", "Dublin", "Europe"),
    ("Poland", "Warsaw", "Europe"), ("Hungary", "Budapest", "Europe"),
    ("Vietnam", "Hanoi", "Asia"), ("Indonesia", "Jakarta", "Asia"),
    ("Turkey", "Ankara", "Asia"), ("Morocco", "Rabat", "Africa"),
    ("Nigeria", "Abuja", "Africa"), ("Ghana", "Accra", "Africa"),
    ("Denmark", "Copenhagen", "Europe"), ("Belgium", "Brussels", "Europe"),
    ("Netherlands", "Amsterdam", "Europe"), ("Switzerland", "Bern", "Europe"),
    ("New Zealand", "Wellington", "Oceania"), ("Cuba", "Havana", "North America"),
]

ADJ = ["Silent", "Golden", "Hidden", "Broken", "Crimson", "Frozen", "Distant",
       "Burning", "Quiet", "Wild", "Lost", "Bright", "Hollow", "Iron", "Velvet",
       "Restless", "Endless", "Northern", "Painted", "Falling"]
NOUN = ["Harbor", "Garden", "River", "Mirror", "Lantern", "Forest", "Signal",
        "Kingdom", "Orchard", "Compass", "Meadow", "Tower", "Voyage", "Canyon",
        "Bridge", "Island", "Ember", "Echo", "Horizon", "Valley"]
FIRST = ["Anna", "Ben", "Clara", "David", "Elena", "Felix", "Grace", "Henry",
         "Iris", "Jonas", "Kara", "Leo", "Maya", "Noah", "Olga", "Paul", "Rosa",
         "Simon", "Tara", "Victor"]
LAST = ["Archer", "Bishop", "Carver", "Dalton", "Ellison", "Fletcher", "Garner",
        "Hayes", "Ingram", "Jensen", "Keller", "Lowry", "Mercer", "Norris",
        "Osborne", "Prescott", "Quinlan", "Rowe", "Sutton", "Whitaker"]
FILM_GENRES = ["comedy", "drama", "horror", "mystery", "animation", "western",
               "documentary", "musical"]
BOOK_GENRES = ["poetry", "biography", "fantasy", "history", "satire", "memoir"]
SONG_GENRES = ["jazz", "blues", "folk", "soul", "reggae", "country"]


def person(rng, used):
    while True:
        name = f"{rng.choice(FIRST)} {rng.choice(LAST)}"
        if name not in used:
            used.add(name)
            return name


def titles(rng, prefix, count, used):
    out = []
    while len(out) < count:
        t = f"{prefix}{rng.choice(ADJ)} {rng.choice(NOUN)}"
        if t not in used:
            used.add(t)
            out.append(t)
    return out


def main():
    rng = random.Random(20211015)
    rows = list(REAL)
    for country, capital, continent in COUNTRIES:
        rows.append((country, "capital", capital))
        rows.append((country, "continent", continent))
        rows.append((capital, "country", country))
    used_titles = set()
    people = set()
    directors = [person(rng, people) for _ in range(30)]
    actors = [person(rng, people) for _ in range(60)]
    authors = [person(rng, people) for _ in range(30)]
    singers = [person(rng, people) for _ in range(30)]
    for film in titles(rng, "The ", 110, used_titles):
        rows.append((film, "director", rng.choice(directors)))
        for g in rng.sample(FILM_GENRES, rng.choice([1, 2])):
            rows.append((film, "genre", g))
        for a in rng.sample(actors, rng.choice([1, 2])):
            rows.append((film, "actor", a))
        rows.append((film, "year", str(rng.randint(1960, 2021))))
    for book in titles(rng, "A ", 70, used_titles):
        rows.append((book, "author", rng.choice(authors)))
        rows.append((book, "genre", rng.choice(BOOK_GENRES)))
        rows.append((book, "year", str(rng.randint(1900, 2021))))
    for song in titles(rng, "", 70, used_titles):
        rows.append((song, "singer", rng.choice(singers)))
        rows.append((song, "genre", rng.choice(SONG_GENRES)))
        rows.append((song, "year", str(rng.randint(1950, 2021))))
    for d in directors:
        rows.append((d, "occupation", "film director"))
    for a in authors:
        rows.append((a, "occupation", "writer"))
    out = sys.stdout
    for s, r, o in rows:
        out.write(f"{s}\t{r}\t{o}\n")


if __name__ == "__main__":
    main()
