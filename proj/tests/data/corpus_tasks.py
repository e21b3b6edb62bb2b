#!/usr/bin/env python3
# Writes corpus.json, the crafted synthesis corpus, after checking that
# every gold query executes against the fixture databases.
import json
import sqlite3

T = [
 # retail
 ("retail", "simple", "List the names of all customers.", "SELECT name FROM customers"),
 ("retail", "simple", "Which customers live in Berlin?", "SELECT name FROM customers WHERE city = 'Berlin'"),
 ("retail", "simple", "How many orders were cancelled?", "SELECT COUNT(*) FROM orders WHERE status = 'cancelled'"),
 ("retail", "simple", "What is the most expensive product?", "SELECT name FROM products ORDER BY price DESC LIMIT 1"),
 ("retail", "moderate", "How many customers are there in each city?", "SELECT city, COUNT(*) FROM customers GROUP BY city"),
 ("retail", "moderate", "Which cities have more than three customers?", "SELECT city FROM customers GROUP BY city HAVING COUNT(*) > 3"),
 ("retail", "moderate", "What is the total amount of shipped orders per year, latest year first?",
  "SELECT order_year, SUM(amount) FROM orders WHERE status = 'shipped' GROUP BY order_year ORDER BY order_year DESC"),
 ("retail", "moderate", "Which customers placed an order above 300?",
  "SELECT DISTINCT c.name FROM customers AS c JOIN orders AS o ON o.customer_id = c.id WHERE o.amount > 300"),
 ("retail", "moderate", "What is the average price of products in each category, cheapest category first?",
  "SELECT category, AVG(price) FROM products GROUP BY category ORDER BY AVG(price)"),
 ("retail", "challenging", "Which customers from Paris have spent more than 500 in total?",
  "SELECT c.name FROM customers AS c JOIN orders AS o ON o.customer_id = c.id WHERE c.city = 'Paris' GROUP BY c.name HAVING SUM(o.amount) > 500"),
 ("retail", "challenging", "Which products were never ordered five at a time?",
  "SELECT name FROM products WHERE id NOT IN (SELECT product_id FROM order_items WHERE quantity = 5)"),
 ("retail", "challenging", "Which customers have at least one pending order?",
  "SELECT name FROM customers WHERE EXISTS (SELECT 1 FROM orders WHERE orders.customer_id = customers.id AND orders.status = 'pending')"),
 ("retail", "challenging", "Which orders are above the average order amount?",
  "SELECT id, amount FROM orders WHERE amount > (SELECT AVG(amount) FROM orders) ORDER BY amount DESC"),
 ("retail", "challenging", "What are the three best-selling products by quantity?",
  "SELECT p.name, SUM(i.quantity) FROM products AS p JOIN order_items AS i ON i.product_id = p.id GROUP BY p.name ORDER BY SUM(i.quantity) DESC, p.name LIMIT 3"),
 ("retail", "moderate", "Classify customers as young or senior by age 40.",
  "SELECT name, CASE WHEN age < 40 THEN 'young' ELSE 'senior' END FROM customers WHERE signup_year >= 2018"),
 ("retail", "moderate", "Which customers are between 25 and 35 years old?",
  "SELECT name, age FROM customers WHERE age BETWEEN 25 AND 35 ORDER BY age"),
 ("retail", "simple", "Which products have a name starting with item1?",
  "SELECT name FROM products WHERE name LIKE 'item1%'"),
 ("retail", "challenging", "Which cities have customers but no cancelled orders?",
  "SELECT city FROM customers EXCEPT SELECT c.city FROM customers AS c JOIN orders AS o ON o.customer_id = c.id WHERE o.status = 'cancelled'"),
 # school
 ("school", "simple", "List all course titles.", "SELECT title FROM courses"),
 ("school", "simple", "Which students have a GPA above 3.5?", "SELECT name FROM students WHERE gpa > 3.5"),
 ("school", "simple", "How many courses give four credits?", "SELECT COUNT(*) FROM courses WHERE credits = 4"),
 ("school", "moderate", "How many students are in each grade?", "SELECT grade, COUNT(*) FROM students GROUP BY grade"),
 ("school", "moderate", "What is the highest score in each course?",
  "SELECT c.title, MAX(e.score) FROM courses AS c JOIN enrollments AS e ON e.course_id = c.id GROUP BY c.title"),
 ("school", "moderate", "Which students study a Science major?",
  "SELECT s.name FROM students AS s JOIN majors AS m ON s.major_id = m.id WHERE m.department = 'Science'"),
 ("school", "moderate", "Who are the five students with the best GPA?",
  "SELECT name, gpa FROM students ORDER BY gpa DESC, name LIMIT 5"),
 ("school", "challenging", "Which courses have an average score above 70?",
  "SELECT c.title FROM courses AS c JOIN enrollments AS e ON e.course_id = c.id GROUP BY c.title HAVING AVG(e.score) > 70 ORDER BY c.title"),
 ("school", "challenging", "Which students are enrolled in no Arts course?",
  "SELECT name FROM students WHERE id NOT IN (SELECT e.student_id FROM enrollments AS e JOIN courses AS c ON e.course_id = c.id WHERE c.department = 'Arts')"),
 ("school", "challenging", "Which students have a GPA above the average of their grade 12 peers?",
  "SELECT name FROM students WHERE gpa > (SELECT AVG(gpa) FROM students WHERE grade = 12) AND grade < 12"),
 ("school", "moderate", "How many distinct students take courses from the Social department?",
  "SELECT COUNT(DISTINCT e.student_id) FROM enrollments AS e JOIN courses AS c ON e.course_id = c.id WHERE c.department = 'Social'"),
 ("school", "challenging", "Which majors have more than two students with GPA at least 2.5?",
  "SELECT m.title FROM majors AS m JOIN students AS s ON s.major_id = m.id WHERE s.gpa >= 2.5 GROUP BY m.title HAVING COUNT(*) > 2"),
 ("school", "moderate", "List the departments offering courses or majors.",
  "SELECT department FROM courses UNION SELECT department FROM majors"),
 ("school", "challenging", "Which courses have at least one student scoring 95 or more?",
  "SELECT title FROM courses WHERE EXISTS (SELECT 1 FROM enrollments WHERE enrollments.course_id = courses.id AND enrollments.score >= 95)"),
 ("school", "moderate", "What is the total credits taken by each student, highest first?",
  "SELECT s.name, SUM(c.credits) FROM students AS s JOIN enrollments AS e ON e.student_id = s.id JOIN courses AS c ON c.id = e.course_id GROUP BY s.name ORDER BY SUM(c.credits) DESC, s.name LIMIT 10"),
 # flights
 ("flights", "simple", "List all airport cities.", "SELECT city FROM airports"),
 ("flights", "simple", "Which flights are longer than 1500 km?", "SELECT id FROM flights WHERE distance > 1500"),
 ("flights", "simple", "How many airlines are German?", "SELECT COUNT(*) FROM airlines WHERE country = 'Germany'"),
 ("flights", "moderate", "How many flights depart from each airport?", "SELECT origin, COUNT(*) FROM flights GROUP BY origin"),
 ("flights", "moderate", "Which airports have more than ten departures?",
  "SELECT origin FROM flights GROUP BY origin HAVING COUNT(*) > 10"),
 ("flights", "moderate", "What is the longest flight operated in 2021?",
  "SELECT id, distance FROM flights WHERE year = 2021 ORDER BY distance DESC LIMIT 1"),
 ("flights", "moderate", "Which airlines fly out of Berlin?",
  "SELECT DISTINCT a.name FROM airlines AS a JOIN flights AS f ON f.airline_id = a.id WHERE f.origin = 'BER'"),
 ("flights", "challenging", "What is the average duration per airline for flights over 1000 km, slowest first?",
  "SELECT a.name, AVG(f.duration) FROM airlines AS a JOIN flights AS f ON f.airline_id = a.id WHERE f.distance > 1000 GROUP BY a.name ORDER BY AVG(f.duration) DESC"),
 ("flights", "challenging", "Which flights go to an airport in France?",
  "SELECT id FROM flights WHERE dest IN (SELECT code FROM airports WHERE country = 'France')"),
 ("flights", "challenging", "Which cities have an airport that no 2019 flight arrives at?",
  "SELECT city FROM airports WHERE code NOT IN (SELECT dest FROM flights WHERE year = 2019)"),
 ("flights", "challenging", "Which domestic flights exist?",
  "SELECT f.id FROM flights AS f JOIN airports AS o ON f.origin = o.code JOIN airports AS d ON f.dest = d.code WHERE o.country = d.country"),
 ("flights", "moderate", "What is the temperature reading for each airport with a known value?",
  "SELECT airport, temperature FROM readings WHERE temperature IS NOT NULL ORDER BY temperature"),
 ("flights", "challenging", "Which airlines operate more flights than the average airline?",
  "SELECT a.name FROM airlines AS a JOIN flights AS f ON f.airline_id = a.id GROUP BY a.name HAVING COUNT(*) > (SELECT COUNT(*) FROM flights) / 5"),
 ("flights", "moderate", "Label flights as short or long haul for 2020.",
  "SELECT id, CASE WHEN distance > 1200 THEN 'long' ELSE 'short' END FROM flights WHERE year = 2020 ORDER BY id"),
 ("flights", "simple", "Which countries have airports?", "SELECT DISTINCT country FROM airports"),
 ("flights", "challenging", "Which airports are both an origin and a destination in 2022?",
  "SELECT origin FROM flights WHERE year = 2022 INTERSECT SELECT dest FROM flights WHERE year = 2022"),
 ("flights", "moderate", "What is the total distance flown per year since 2020?",
  "SELECT year, SUM(distance) FROM flights WHERE year >= 2020 GROUP BY year ORDER BY year"),
]

assert len(T) == 50, len(T)
out = []
conns = {}
for i, (db, diff, question, sql) in enumerate(T):
    if db not in conns:
        conns[db] = sqlite3.connect(":memory:")
        conns[db].executescript(open("db/%s.sql" % db).read())
    rows = conns[db].execute(sql).fetchall()
    assert rows, (i, sql)
    out.append({"question_id": "c%02d" % (i + 1), "db_id": db, "question": question,
                "evidence": "", "SQL": sql, "difficulty": diff})
with open("corpus.json", "w") as f:
    json.dump(out, f, indent=1)
    f.write("\n")
print(len(out), "tasks")
